//! The global environment: `window`, intrinsic prototypes and native
//! builtins.

use std::rc::Rc;

use crate::interp::env::Env;
use crate::interp::{ErrorKind, EvalResult, Interpreter, RuntimeError, RuntimeEvent};
use crate::object::{
    Callable, Heap, ObjectClass, ObjectRecord, Property, PropertyDescriptor, PropertyKey, Slot,
};
use crate::syntax::ast::FunctionDef;
use crate::syntax::SourceSpan;
use crate::value::{to_boolean, ObjRef, Value};

/// Native functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    ObjectCtor,
    ObjectCreate,
    ObjectDefineProperty,
    ObjectPreventExtensions,
    ObjectIsExtensible,
    ObjectFreeze,
    ObjectIsFrozen,
    ObjectProtoIsPrototypeOf,
    ObjectProtoToString,
    ObjectProtoValueOf,
    FunctionCtor,
    FunctionProtoCall,
    FunctionProtoApply,
    ArrayCtor,
    ArrayProtoPush,
    ArrayProtoJoin,
    ArrayProtoToString,
    Eval,
}

#[derive(Debug, Clone, Copy)]
pub struct Intrinsics {
    pub object_prototype: ObjRef,
    pub function_prototype: ObjRef,
    pub array_prototype: ObjRef,
    pub object_constructor: ObjRef,
    pub function_constructor: ObjRef,
    pub array_constructor: ObjRef,
    pub eval: ObjRef,
}

#[derive(Debug)]
pub struct Realm {
    pub heap: Heap,
    pub intrinsics: Intrinsics,
    pub window: ObjRef,
}

impl Default for Realm {
    fn default() -> Self {
        create_realm()
    }
}

fn builtin_function(heap: &mut Heap, function_prototype: ObjRef, b: Builtin) -> ObjRef {
    let mut rec = ObjectRecord::new(Some(function_prototype), ObjectClass::Function);
    rec.callable = Some(Callable::Builtin(b));
    heap.alloc(rec)
}

fn install(heap: &mut Heap, target: ObjRef, name: &str, value: Value) {
    heap.record_mut(target)
        .properties
        .insert(name.to_string(), Property::hidden(value));
}

fn install_fixed(heap: &mut Heap, target: ObjRef, name: &str, value: Value) {
    heap.record_mut(target).properties.insert(
        name.to_string(),
        Property {
            slot: Slot::Data {
                value,
                writable: false,
            },
            enumerable: false,
            configurable: false,
        },
    );
}

/// A fresh realm with its own heap.
pub fn create_realm() -> Realm {
    let mut heap = Heap::new();
    let object_prototype = heap.create_object(None);
    let function_prototype = heap.create_object(Some(object_prototype));
    let array_prototype = heap.alloc(ObjectRecord::new(Some(object_prototype), ObjectClass::Array));
    install_fixed(&mut heap, array_prototype, "length", Value::Number(0.0));

    let native = |heap: &mut Heap, target: ObjRef, name: &str, b: Builtin| {
        let f = builtin_function(heap, function_prototype, b);
        install(heap, target, name, Value::Object(f));
        f
    };

    native(&mut heap, object_prototype, "isPrototypeOf", Builtin::ObjectProtoIsPrototypeOf);
    native(&mut heap, object_prototype, "toString", Builtin::ObjectProtoToString);
    native(&mut heap, object_prototype, "valueOf", Builtin::ObjectProtoValueOf);
    native(&mut heap, function_prototype, "call", Builtin::FunctionProtoCall);
    native(&mut heap, function_prototype, "apply", Builtin::FunctionProtoApply);
    native(&mut heap, array_prototype, "push", Builtin::ArrayProtoPush);
    native(&mut heap, array_prototype, "join", Builtin::ArrayProtoJoin);
    native(&mut heap, array_prototype, "toString", Builtin::ArrayProtoToString);

    let window = heap.alloc(ObjectRecord::new(Some(object_prototype), ObjectClass::Window));
    install(&mut heap, window, "window", Value::Object(window));

    let object_constructor = native(&mut heap, window, "Object", Builtin::ObjectCtor);
    for (name, b) in [
        ("create", Builtin::ObjectCreate),
        ("defineProperty", Builtin::ObjectDefineProperty),
        ("preventExtensions", Builtin::ObjectPreventExtensions),
        ("isExtensible", Builtin::ObjectIsExtensible),
        ("freeze", Builtin::ObjectFreeze),
        ("isFrozen", Builtin::ObjectIsFrozen),
    ] {
        native(&mut heap, object_constructor, name, b);
    }
    let function_constructor = native(&mut heap, window, "Function", Builtin::FunctionCtor);
    let array_constructor = native(&mut heap, window, "Array", Builtin::ArrayCtor);
    let eval = native(&mut heap, window, "eval", Builtin::Eval);

    for (ctor, proto) in [
        (object_constructor, object_prototype),
        (function_constructor, function_prototype),
        (array_constructor, array_prototype),
    ] {
        install_fixed(&mut heap, ctor, "prototype", Value::Object(proto));
        install(&mut heap, proto, "constructor", Value::Object(ctor));
    }
    install_fixed(&mut heap, window, "NaN", Value::Number(f64::NAN));
    install_fixed(&mut heap, window, "Infinity", Value::Number(f64::INFINITY));

    Realm {
        heap,
        intrinsics: Intrinsics {
            object_prototype,
            function_prototype,
            array_prototype,
            object_constructor,
            function_constructor,
            array_constructor,
            eval,
        },
        window,
    }
}

impl Realm {
    pub fn new() -> Self {
        create_realm()
    }

    pub fn create_plain_object(&mut self) -> ObjRef {
        self.heap.create_object(Some(self.intrinsics.object_prototype))
    }

    /// A closure over `env`, with a fresh `prototype` object whose
    /// `constructor` points back at the function.
    pub fn create_function(&mut self, def: Rc<FunctionDef>, env: Env) -> ObjRef {
        let params = def.params.len();
        let mut rec = ObjectRecord::new(Some(self.intrinsics.function_prototype), ObjectClass::Function);
        rec.callable = Some(Callable::User { def, env });
        let f = self.heap.alloc(rec);
        let proto = self.create_plain_object();
        install(&mut self.heap, proto, "constructor", Value::Object(f));
        self.heap.record_mut(f).properties.insert(
            "prototype".into(),
            Property {
                slot: Slot::Data {
                    value: Value::Object(proto),
                    writable: true,
                },
                enumerable: false,
                configurable: false,
            },
        );
        install_fixed(&mut self.heap, f, "length", Value::Number(params as f64));
        f
    }

    pub fn create_array(&mut self, values: Vec<Value>) -> ObjRef {
        let arr = self
            .heap
            .alloc(ObjectRecord::new(Some(self.intrinsics.array_prototype), ObjectClass::Array));
        let len = values.len();
        let rec = self.heap.record_mut(arr);
        rec.properties.insert(
            "length".into(),
            Property {
                slot: Slot::Data {
                    value: Value::Number(len as f64),
                    writable: true,
                },
                enumerable: false,
                configurable: false,
            },
        );
        for (i, v) in values.into_iter().enumerate() {
            rec.properties.insert(i.to_string(), Property::plain(v));
        }
        arr
    }

    pub fn is_array(&self, obj: ObjRef) -> bool {
        self.heap.record(obj).class == ObjectClass::Array
    }

    /// Elements `0..length` of an array, read without calling getters.
    pub fn array_elements(&self, arr: ObjRef) -> Vec<Value> {
        let len = match self.heap.get_data(arr, &"length".into()) {
            Value::Number(n) => n as usize,
            _ => 0,
        };
        (0..len)
            .map(|i| self.heap.get_data(arr, &PropertyKey::from(i as u32)))
            .collect()
    }

    /// Reads a global, i.e. a property of `window`.
    pub fn global(&self, name: &str) -> Value {
        self.heap.get_data(self.window, &name.into())
    }
}

fn arg(args: &[Value], i: usize) -> Value {
    args.get(i).cloned().unwrap_or_default()
}

fn type_error(message: impl Into<String>, span: SourceSpan) -> RuntimeError {
    RuntimeError::new(ErrorKind::Type, message, span)
}

fn require_object(v: &Value, what: &str, span: SourceSpan) -> EvalResult<ObjRef> {
    v.as_object()
        .ok_or_else(|| type_error(format!("{what} called on non-object ({})", v.tag()), span))
}

/// Reads a descriptor object (`{value:…, writable:…}`) the way
/// `Object.defineProperty` does.
pub fn to_property_descriptor(
    interp: &mut Interpreter<'_>,
    desc: &Value,
    span: SourceSpan,
) -> EvalResult<PropertyDescriptor> {
    let obj = require_object(desc, "property descriptor", span)?;
    let field = |interp: &mut Interpreter<'_>, name: &str| -> EvalResult<Option<Value>> {
        let key = PropertyKey::from(name);
        if interp.realm.heap.has_property(obj, &key) {
            interp.get(desc, &key, span).map(Some)
        } else {
            Ok(None)
        }
    };
    let enumerable = field(interp, "enumerable")?.map(|v| to_boolean(&v));
    let configurable = field(interp, "configurable")?.map(|v| to_boolean(&v));
    let value = field(interp, "value")?;
    let writable = field(interp, "writable")?.map(|v| to_boolean(&v));
    let get = field(interp, "get")?;
    let set = field(interp, "set")?;
    for (name, f) in [("getter", &get), ("setter", &set)] {
        if let Some(f) = f {
            if !matches!(f, Value::Undefined) && !interp.is_callable(f) {
                return Err(type_error(format!("{name} must be a function"), span));
            }
        }
    }
    Ok(PropertyDescriptor {
        value,
        writable,
        get,
        set,
        enumerable,
        configurable,
    })
}

fn define(
    interp: &mut Interpreter<'_>,
    obj: ObjRef,
    key: &PropertyKey,
    desc: &PropertyDescriptor,
    span: SourceSpan,
) -> EvalResult<()> {
    interp
        .realm
        .heap
        .define_property(obj, key, desc)
        .map_err(|e| RuntimeError::new(ErrorKind::Define, e.to_string(), span))
}

fn define_properties(
    interp: &mut Interpreter<'_>,
    obj: ObjRef,
    props: &Value,
    span: SourceSpan,
) -> EvalResult<()> {
    let source = require_object(props, "Object.create properties", span)?;
    let keys: Vec<PropertyKey> = interp
        .realm
        .heap
        .record(source)
        .properties
        .iter()
        .filter(|(_, p)| p.enumerable)
        .map(|(k, _)| PropertyKey::from(k.as_str()))
        .collect();
    let mut descriptors = Vec::with_capacity(keys.len());
    for key in keys {
        let d = interp.get(props, &key, span)?;
        descriptors.push((key, to_property_descriptor(interp, &d, span)?));
    }
    for (key, desc) in descriptors {
        define(interp, obj, &key, &desc, span)?;
    }
    Ok(())
}

fn class_name(interp: &Interpreter<'_>, v: &Value) -> &'static str {
    match v {
        Value::Undefined => "Undefined",
        Value::Null => "Null",
        Value::Boolean(_) => "Boolean",
        Value::Number(_) => "Number",
        Value::String(_) => "String",
        Value::Object(o) => match interp.realm.heap.record(*o).class {
            ObjectClass::Ordinary => "Object",
            ObjectClass::Array => "Array",
            ObjectClass::Function => "Function",
            ObjectClass::Window => "Window",
        },
    }
}

fn array_from_args(interp: &mut Interpreter<'_>, args: Vec<Value>, span: SourceSpan) -> EvalResult<Value> {
    if let [Value::Number(n)] = args.as_slice() {
        let n = *n;
        if n.fract() != 0.0 || !(0.0..4294967296.0).contains(&n) {
            return Err(RuntimeError::new(ErrorKind::Range, "invalid array length", span));
        }
        let arr = interp.realm.create_array(Vec::new());
        interp.realm.heap.put(arr, &"length".into(), Value::Number(n));
        return Ok(Value::Object(arr));
    }
    Ok(Value::Object(interp.realm.create_array(args)))
}

fn join(interp: &mut Interpreter<'_>, this: &Value, sep: &str, span: SourceSpan) -> EvalResult<Value> {
    let obj = require_object(this, "Array.prototype.join", span)?;
    if interp.joining.contains(&obj) {
        return Ok(Value::string(""));
    }
    let len = interp.get(this, &"length".into(), span)?;
    let len = interp.to_number(&len, span)?;
    let len = if len.is_nan() || len < 0.0 { 0 } else { len as u32 };
    interp.joining.push(obj);
    let result = (|| {
        let mut out = String::new();
        for i in 0..len {
            if i > 0 {
                out.push_str(sep);
            }
            let v = interp.get(this, &PropertyKey::from(i), span)?;
            if !v.is_nullish() {
                out.push_str(&interp.to_string_value(&v, span)?);
            }
        }
        Ok(Value::string(out))
    })();
    interp.joining.pop();
    result
}

/// Runs a native function.
pub fn call_builtin(
    interp: &mut Interpreter<'_>,
    b: Builtin,
    this: Value,
    args: Vec<Value>,
    span: SourceSpan,
) -> EvalResult<Value> {
    match b {
        Builtin::ObjectCtor => match arg(&args, 0) {
            Value::Undefined | Value::Null => Ok(Value::Object(interp.realm.create_plain_object())),
            v @ Value::Object(_) => Ok(v),
            v => Err(type_error(
                format!("Object() cannot wrap a {} value", v.tag()),
                span,
            )),
        },
        Builtin::ObjectCreate => {
            let proto = match arg(&args, 0) {
                Value::Object(p) => Some(p),
                Value::Null => None,
                v => {
                    return Err(type_error(
                        format!("Object prototype may only be an object or null, got {}", v.tag()),
                        span,
                    ))
                }
            };
            let obj = interp.realm.heap.create_object(proto);
            let props = arg(&args, 1);
            if !matches!(props, Value::Undefined) {
                define_properties(interp, obj, &props, span)?;
            }
            Ok(Value::Object(obj))
        }
        Builtin::ObjectDefineProperty => {
            let target = arg(&args, 0);
            let obj = require_object(&target, "Object.defineProperty", span)?;
            let key = interp.to_property_key(&arg(&args, 1), span)?;
            let desc = to_property_descriptor(interp, &arg(&args, 2), span)?;
            define(interp, obj, &key, &desc, span)?;
            Ok(target)
        }
        Builtin::ObjectPreventExtensions => {
            let target = arg(&args, 0);
            let obj = require_object(&target, "Object.preventExtensions", span)?;
            interp.realm.heap.prevent_extensions(obj);
            Ok(target)
        }
        Builtin::ObjectIsExtensible => {
            let obj = require_object(&arg(&args, 0), "Object.isExtensible", span)?;
            Ok(Value::Boolean(interp.realm.heap.is_extensible(obj)))
        }
        Builtin::ObjectFreeze => {
            let target = arg(&args, 0);
            let obj = require_object(&target, "Object.freeze", span)?;
            interp.realm.heap.freeze(obj);
            Ok(target)
        }
        Builtin::ObjectIsFrozen => {
            let obj = require_object(&arg(&args, 0), "Object.isFrozen", span)?;
            Ok(Value::Boolean(interp.realm.heap.is_frozen(obj)))
        }
        Builtin::ObjectProtoIsPrototypeOf => {
            let proto = require_object(&this, "Object.prototype.isPrototypeOf", span)?;
            Ok(Value::Boolean(interp.realm.heap.is_prototype_of(proto, &arg(&args, 0))))
        }
        Builtin::ObjectProtoToString => {
            Ok(Value::string(format!("[object {}]", class_name(interp, &this))))
        }
        Builtin::ObjectProtoValueOf => {
            if this.is_nullish() {
                return Err(type_error("valueOf called on undefined or null", span));
            }
            Ok(this)
        }
        Builtin::FunctionCtor => Err(type_error(
            "the Function constructor is not supported",
            span,
        )),
        Builtin::FunctionProtoCall => {
            if !interp.is_callable(&this) {
                return Err(RuntimeError::new(
                    ErrorKind::NotCallable,
                    "Function.prototype.call called on a non-function",
                    span,
                ));
            }
            let mut args = args.into_iter();
            let this_arg = args.next().unwrap_or_default();
            let receiver = explicit_this(interp, this_arg);
            interp.invoke_function(&this, receiver, args.collect(), span)
        }
        Builtin::FunctionProtoApply => {
            if !interp.is_callable(&this) {
                return Err(RuntimeError::new(
                    ErrorKind::NotCallable,
                    "Function.prototype.apply called on a non-function",
                    span,
                ));
            }
            let receiver = explicit_this(interp, arg(&args, 0));
            let call_args = match arg(&args, 1) {
                Value::Undefined | Value::Null => Vec::new(),
                Value::Object(o) if interp.realm.is_array(o) => interp.realm.array_elements(o),
                v => {
                    return Err(RuntimeError::new(
                        ErrorKind::ApplyArgs,
                        format!("apply expects an array of arguments, got {}", v.tag()),
                        span,
                    ))
                }
            };
            interp.invoke_function(&this, receiver, call_args, span)
        }
        Builtin::ArrayCtor => array_from_args(interp, args, span),
        Builtin::ArrayProtoPush => {
            let obj = require_object(&this, "Array.prototype.push", span)?;
            let len = interp.get(&this, &"length".into(), span)?;
            let mut len = interp.to_number(&len, span)?;
            if len.is_nan() {
                len = 0.0;
            }
            for v in args {
                if !interp.put(&this, &PropertyKey::from(len), v, span)? {
                    return Err(type_error("cannot add an element to this array", span));
                }
                len += 1.0;
            }
            if !interp.realm.is_array(obj) {
                interp.put(&this, &"length".into(), Value::Number(len), span)?;
            }
            Ok(Value::Number(len))
        }
        Builtin::ArrayProtoJoin => {
            let sep = match arg(&args, 0) {
                Value::Undefined => ",".to_string(),
                v => interp.to_string_value(&v, span)?,
            };
            join(interp, &this, &sep, span)
        }
        Builtin::ArrayProtoToString => join(interp, &this, ",", span),
        Builtin::Eval => {
            interp.emit(RuntimeEvent::EvalInvoked { span });
            match arg(&args, 0) {
                Value::String(text) => interp.direct_eval(&text, span),
                other => Ok(other),
            }
        }
    }
}

fn explicit_this(interp: &Interpreter<'_>, this_arg: Value) -> Value {
    crate::interp::resolve_this(
        &crate::interp::CallShape::Explicit { this_arg },
        interp.realm,
    )
}

/// `new` applied to a native function.
pub fn construct_builtin(
    interp: &mut Interpreter<'_>,
    b: Builtin,
    args: Vec<Value>,
    span: SourceSpan,
) -> EvalResult<Value> {
    match b {
        Builtin::ObjectCtor | Builtin::ArrayCtor | Builtin::FunctionCtor => {
            let window = Value::Object(interp.window());
            call_builtin(interp, b, window, args, span)
        }
        _ => Err(RuntimeError::new(
            ErrorKind::NotCallable,
            "builtin function is not a constructor",
            span,
        )),
    }
}
