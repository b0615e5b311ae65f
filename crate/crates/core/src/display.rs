//! Canonical value rendering used by traces and `// answers` comparisons.
//!
//! Strings are single-quoted, arrays are `[a, b]`, objects list their own
//! enumerable properties as `{k: v}`, functions render as `function` and the
//! global object as `[object Window]`.

use crate::number::number_to_string;
use crate::object::{ObjectClass, Slot};
use crate::realm::Realm;
use crate::value::{ObjRef, Value};

pub fn display_value(realm: &Realm, value: &Value) -> String {
    let mut out = String::new();
    write_value(realm, value, &mut Vec::new(), &mut out);
    out
}

pub fn quote_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        match c {
            '\'' => out.push_str("\\'"),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('\'');
    out
}

fn is_identifier(key: &str) -> bool {
    let mut chars = key.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '$')
}

fn write_key(key: &str, out: &mut String) {
    if is_identifier(key) || crate::number::array_index(key).is_some() {
        out.push_str(key);
    } else {
        out.push_str(&quote_string(key));
    }
}

fn write_value(realm: &Realm, value: &Value, stack: &mut Vec<ObjRef>, out: &mut String) {
    match value {
        Value::Undefined => out.push_str("undefined"),
        Value::Null => out.push_str("null"),
        Value::Boolean(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&number_to_string(*n)),
        Value::String(s) => out.push_str(&quote_string(s)),
        Value::Object(o) => write_object(realm, *o, stack, out),
    }
}

fn write_object(realm: &Realm, obj: ObjRef, stack: &mut Vec<ObjRef>, out: &mut String) {
    let rec = realm.heap.record(obj);
    if rec.callable.is_some() {
        out.push_str("function");
        return;
    }
    if rec.class == ObjectClass::Window {
        out.push_str("[object Window]");
        return;
    }
    if stack.contains(&obj) {
        out.push_str("[cycle]");
        return;
    }
    stack.push(obj);
    if rec.class == ObjectClass::Array {
        out.push('[');
        for (i, v) in realm.array_elements(obj).iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_value(realm, v, stack, out);
        }
        out.push(']');
    } else {
        out.push('{');
        let mut first = true;
        for (key, prop) in rec.properties.iter().filter(|(_, p)| p.enumerable) {
            if !first {
                out.push_str(", ");
            }
            first = false;
            write_key(key, out);
            out.push_str(": ");
            match &prop.slot {
                Slot::Data { value, .. } => write_value(realm, value, stack, out),
                Slot::Accessor { get, set } => out.push_str(match (get.is_nullish(), set.is_nullish()) {
                    (false, false) => "[getter/setter]",
                    (false, true) => "[getter]",
                    _ => "[setter]",
                }),
            }
        }
        out.push('}');
    }
    stack.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitives() {
        let realm = Realm::new();
        assert_eq!(display_value(&realm, &Value::Undefined), "undefined");
        assert_eq!(display_value(&realm, &Value::Number(0.5)), "0.5");
        assert_eq!(display_value(&realm, &"it's".into()), "'it\\'s'");
    }

    #[test]
    fn containers() {
        let mut realm = Realm::new();
        let o = realm.create_plain_object();
        realm.heap.put(o, &"a".into(), 10.0.into());
        realm.heap.put(o, &"my key".into(), "x".into());
        let arr = realm.create_array(vec![1.0.into(), Value::Object(o)]);
        assert_eq!(
            display_value(&realm, &Value::Object(arr)),
            "[1, {a: 10, 'my key': 'x'}]"
        );
        realm.heap.put(o, &"self".into(), Value::Object(o));
        assert_eq!(
            display_value(&realm, &Value::Object(o)),
            "{a: 10, 'my key': 'x', self: [cycle]}"
        );
        assert_eq!(display_value(&realm, &Value::Object(realm.window)), "[object Window]");
    }
}
