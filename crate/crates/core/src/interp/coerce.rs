//! Type conversions that may run user code (`valueOf`, `toString`).

use crate::number::{number_to_string, string_to_number};
use crate::object::PropertyKey;
use crate::syntax::SourceSpan;
use crate::value::{strict_equals, Value};

use super::{ErrorKind, EvalResult, Interpreter, RuntimeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hint {
    Number,
    String,
}

/// `ToNumber` for primitives. Objects must be converted first.
pub fn primitive_to_number(v: &Value) -> f64 {
    match v {
        Value::Undefined => f64::NAN,
        Value::Null => 0.0,
        Value::Boolean(b) => f64::from(u8::from(*b)),
        Value::Number(n) => *n,
        Value::String(s) => string_to_number(s),
        Value::Object(_) => f64::NAN,
    }
}

/// `ToString` for primitives. Objects must be converted first.
pub fn primitive_to_string(v: &Value) -> String {
    match v {
        Value::Undefined => "undefined".into(),
        Value::Null => "null".into(),
        Value::Boolean(b) => b.to_string(),
        Value::Number(n) => number_to_string(*n),
        Value::String(s) => s.to_string(),
        Value::Object(_) => "[object]".into(),
    }
}

impl Interpreter<'_> {
    /// Converts an object by calling `valueOf`/`toString` in hint order;
    /// the first primitive result wins.
    pub fn to_primitive(&mut self, v: &Value, hint: Hint, span: SourceSpan) -> EvalResult<Value> {
        if v.is_primitive() {
            return Ok(v.clone());
        }
        let order = match hint {
            Hint::Number => ["valueOf", "toString"],
            Hint::String => ["toString", "valueOf"],
        };
        for name in order {
            let method = self.get(v, &PropertyKey::from(name), span)?;
            if self.is_callable(&method) {
                let result = self.invoke_function(&method, v.clone(), Vec::new(), span)?;
                if result.is_primitive() {
                    return Ok(result);
                }
            }
        }
        Err(RuntimeError::new(
            ErrorKind::Coercion,
            "cannot convert object to primitive value",
            span,
        ))
    }

    pub fn to_number(&mut self, v: &Value, span: SourceSpan) -> EvalResult<f64> {
        let p = self.to_primitive(v, Hint::Number, span)?;
        Ok(primitive_to_number(&p))
    }

    pub fn to_string_value(&mut self, v: &Value, span: SourceSpan) -> EvalResult<String> {
        let p = self.to_primitive(v, Hint::String, span)?;
        Ok(primitive_to_string(&p))
    }

    pub fn to_property_key(&mut self, v: &Value, span: SourceSpan) -> EvalResult<PropertyKey> {
        Ok(match v {
            Value::Number(n) => PropertyKey::from(*n),
            other => PropertyKey::from(self.to_string_value(other, span)?),
        })
    }

    /// The `==` operator.
    pub fn abstract_equals(&mut self, a: &Value, b: &Value, span: SourceSpan) -> EvalResult<bool> {
        use Value::*;
        Ok(match (a, b) {
            _ if a.tag() == b.tag() => strict_equals(a, b),
            (Undefined | Null, Undefined | Null) => true,
            (Undefined | Null, _) | (_, Undefined | Null) => false,
            (Number(x), String(s)) => *x == string_to_number(s),
            (String(s), Number(x)) => string_to_number(s) == *x,
            (Boolean(_), _) => {
                let n = Number(primitive_to_number(a));
                return self.abstract_equals(&n, b, span);
            }
            (_, Boolean(_)) => {
                let n = Number(primitive_to_number(b));
                return self.abstract_equals(a, &n, span);
            }
            (Object(_), _) => {
                let p = self.to_primitive(a, Hint::Number, span)?;
                return self.abstract_equals(&p, b, span);
            }
            (_, Object(_)) => {
                let p = self.to_primitive(b, Hint::Number, span)?;
                return self.abstract_equals(a, &p, span);
            }
            _ => false,
        })
    }

    /// The `+` operator: string concatenation if either primitive operand is
    /// a string, numeric addition otherwise.
    pub fn add(&mut self, a: &Value, b: &Value, span: SourceSpan) -> EvalResult<Value> {
        let pa = self.to_primitive(a, Hint::Number, span)?;
        let pb = self.to_primitive(b, Hint::Number, span)?;
        if matches!(pa, Value::String(_)) || matches!(pb, Value::String(_)) {
            let mut s = primitive_to_string(&pa);
            s.push_str(&primitive_to_string(&pb));
            Ok(Value::string(s))
        } else {
            Ok(Value::Number(primitive_to_number(&pa) + primitive_to_number(&pb)))
        }
    }

    /// Abstract relational comparison `a < b`; `None` when a NaN is
    /// involved. `right_first` converts `b` before `a` (used for `>`/`<=`
    /// which swap operands but must keep left-to-right conversion order).
    pub fn less_than(
        &mut self,
        a: &Value,
        b: &Value,
        right_first: bool,
        span: SourceSpan,
    ) -> EvalResult<Option<bool>> {
        let (pa, pb) = if right_first {
            let pb = self.to_primitive(b, Hint::Number, span)?;
            (self.to_primitive(a, Hint::Number, span)?, pb)
        } else {
            let pa = self.to_primitive(a, Hint::Number, span)?;
            (pa, self.to_primitive(b, Hint::Number, span)?)
        };
        if let (Value::String(x), Value::String(y)) = (&pa, &pb) {
            let x: Vec<u16> = x.encode_utf16().collect();
            let y: Vec<u16> = y.encode_utf16().collect();
            return Ok(Some(x < y));
        }
        let (x, y) = (primitive_to_number(&pa), primitive_to_number(&pb));
        if x.is_nan() || y.is_nan() {
            Ok(None)
        } else {
            Ok(Some(x < y))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_numbers() {
        assert!(primitive_to_number(&Value::Undefined).is_nan());
        assert_eq!(primitive_to_number(&Value::Null), 0.0);
        assert_eq!(primitive_to_number(&true.into()), 1.0);
        assert_eq!(primitive_to_number(&"".into()), 0.0);
        assert!(primitive_to_number(&"abc".into()).is_nan());
    }

    #[test]
    fn primitive_strings() {
        assert_eq!(primitive_to_string(&Value::Null), "null");
        assert_eq!(primitive_to_string(&(-0.0).into()), "0");
        assert_eq!(primitive_to_string(&f64::NAN.into()), "NaN");
    }
}
