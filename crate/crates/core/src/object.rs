//! The object store: property maps, prototype links and ES5 property
//! descriptors.
//!
//! Every operation here is free of user code. Where a read or write reaches
//! an accessor, the heap reports the getter or setter to call and leaves the
//! call itself to the evaluator.

use std::collections::HashSet;
use std::fmt;
use std::rc::Rc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::interp::env::Env;
use crate::number::{array_index, number_to_string};
use crate::realm::Builtin;
use crate::syntax::ast::FunctionDef;
use crate::value::{ObjRef, Value};

/// Name of the pseudo-property exposing an object's prototype link.
pub const PROTO_KEY: &str = "__proto__";

/// A property name. All keys are strings; numbers are canonicalized to their
/// decimal rendering, so `1` and `"1"` name the same property.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertyKey(String);

impl PropertyKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for PropertyKey {
    fn from(s: &str) -> Self {
        PropertyKey(s.to_string())
    }
}

impl From<String> for PropertyKey {
    fn from(s: String) -> Self {
        PropertyKey(s)
    }
}

impl From<f64> for PropertyKey {
    fn from(n: f64) -> Self {
        PropertyKey(number_to_string(n))
    }
}

impl From<u32> for PropertyKey {
    fn from(n: u32) -> Self {
        PropertyKey(n.to_string())
    }
}

impl fmt::Display for PropertyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone)]
pub enum Slot {
    Data { value: Value, writable: bool },
    Accessor { get: Value, set: Value },
}

/// A stored property: a complete descriptor.
#[derive(Debug, Clone)]
pub struct Property {
    pub slot: Slot,
    pub enumerable: bool,
    pub configurable: bool,
}

impl Property {
    /// The attributes given to properties created by plain assignment.
    pub fn plain(value: Value) -> Self {
        Property {
            slot: Slot::Data {
                value,
                writable: true,
            },
            enumerable: true,
            configurable: true,
        }
    }

    pub fn hidden(value: Value) -> Self {
        Property {
            slot: Slot::Data {
                value,
                writable: true,
            },
            enumerable: false,
            configurable: true,
        }
    }

    pub fn is_writable_data(&self) -> bool {
        matches!(self.slot, Slot::Data { writable: true, .. })
    }
}

/// A possibly partial descriptor, as passed to `Object.defineProperty`.
/// Absent fields default to `false`/`undefined` when a property is created.
#[derive(Debug, Clone, Default)]
pub struct PropertyDescriptor {
    pub value: Option<Value>,
    pub writable: Option<bool>,
    pub get: Option<Value>,
    pub set: Option<Value>,
    pub enumerable: Option<bool>,
    pub configurable: Option<bool>,
}

impl PropertyDescriptor {
    pub fn data(value: Value, writable: bool, enumerable: bool, configurable: bool) -> Self {
        PropertyDescriptor {
            value: Some(value),
            writable: Some(writable),
            enumerable: Some(enumerable),
            configurable: Some(configurable),
            ..Default::default()
        }
    }

    pub fn accessor(get: Value, set: Value, enumerable: bool, configurable: bool) -> Self {
        PropertyDescriptor {
            get: Some(get),
            set: Some(set),
            enumerable: Some(enumerable),
            configurable: Some(configurable),
            ..Default::default()
        }
    }

    pub fn is_data(&self) -> bool {
        self.value.is_some() || self.writable.is_some()
    }

    pub fn is_accessor(&self) -> bool {
        self.get.is_some() || self.set.is_some()
    }

    fn is_empty(&self) -> bool {
        !self.is_data()
            && !self.is_accessor()
            && self.enumerable.is_none()
            && self.configurable.is_none()
    }

    fn to_property(&self) -> Property {
        let slot = if self.is_accessor() {
            Slot::Accessor {
                get: self.get.clone().unwrap_or_default(),
                set: self.set.clone().unwrap_or_default(),
            }
        } else {
            Slot::Data {
                value: self.value.clone().unwrap_or_default(),
                writable: self.writable.unwrap_or(false),
            }
        };
        Property {
            slot,
            enumerable: self.enumerable.unwrap_or(false),
            configurable: self.configurable.unwrap_or(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefineError {
    #[error("cannot define property '{key}': object is not extensible")]
    NotExtensible { key: String },
    #[error("cannot redefine non-configurable property '{key}'")]
    NotConfigurable { key: String },
    #[error("invalid descriptor for '{key}': cannot mix accessor and data fields")]
    Malformed { key: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("setting this prototype would create a cycle")]
pub struct ProtoCycleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectClass {
    Ordinary,
    Array,
    Function,
    Window,
}

#[derive(Debug, Clone)]
pub enum Callable {
    User { def: Rc<FunctionDef>, env: Env },
    Builtin(Builtin),
}

#[derive(Debug, Clone)]
pub struct ObjectRecord {
    pub properties: IndexMap<String, Property>,
    pub proto: Option<ObjRef>,
    pub extensible: bool,
    pub class: ObjectClass,
    pub callable: Option<Callable>,
}

impl ObjectRecord {
    pub fn new(proto: Option<ObjRef>, class: ObjectClass) -> Self {
        ObjectRecord {
            properties: IndexMap::new(),
            proto,
            extensible: true,
            class,
            callable: None,
        }
    }
}

/// Outcome of reading a property.
#[derive(Debug, Clone)]
pub enum PropertyRead {
    Value(Value),
    /// An accessor was found; call `getter` with the original receiver.
    Getter(Value),
}

/// Outcome of writing a property.
#[derive(Debug, Clone)]
pub enum PropertyWrite {
    /// The write was handled; `false` means it was silently refused.
    Done(bool),
    /// An accessor with a setter was found; call it with the receiver.
    Setter(Value),
}

#[derive(Debug, Default)]
pub struct Heap {
    objects: Vec<ObjectRecord>,
}

impl Heap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn alloc(&mut self, record: ObjectRecord) -> ObjRef {
        let id = u32::try_from(self.objects.len()).expect("object heap exhausted");
        self.objects.push(record);
        ObjRef(id)
    }

    /// A fresh, empty, extensible ordinary object.
    pub fn create_object(&mut self, proto: Option<ObjRef>) -> ObjRef {
        self.alloc(ObjectRecord::new(proto, ObjectClass::Ordinary))
    }

    pub fn record(&self, obj: ObjRef) -> &ObjectRecord {
        &self.objects[obj.index()]
    }

    pub fn record_mut(&mut self, obj: ObjRef) -> &mut ObjectRecord {
        &mut self.objects[obj.index()]
    }

    pub fn proto(&self, obj: ObjRef) -> Option<ObjRef> {
        self.record(obj).proto
    }

    pub fn is_callable(&self, obj: ObjRef) -> bool {
        self.record(obj).callable.is_some()
    }

    pub fn set_prototype(
        &mut self,
        obj: ObjRef,
        proto: Option<ObjRef>,
    ) -> Result<(), ProtoCycleError> {
        let mut cursor = proto;
        while let Some(p) = cursor {
            if p == obj {
                return Err(ProtoCycleError);
            }
            cursor = self.proto(p);
        }
        self.record_mut(obj).proto = proto;
        Ok(())
    }

    pub fn own_property(&self, obj: ObjRef, key: &PropertyKey) -> Option<&Property> {
        self.record(obj).properties.get(key.as_str())
    }

    /// Walks the prototype chain; returns the holder and the property found.
    pub fn lookup(&self, obj: ObjRef, key: &PropertyKey) -> Option<(ObjRef, &Property)> {
        let mut cursor = Some(obj);
        while let Some(o) = cursor {
            if let Some(p) = self.own_property(o, key) {
                return Some((o, p));
            }
            cursor = self.proto(o);
        }
        None
    }

    pub fn has_property(&self, obj: ObjRef, key: &PropertyKey) -> bool {
        self.lookup(obj, key).is_some()
    }

    pub fn get_property(&self, obj: ObjRef, key: &PropertyKey) -> PropertyRead {
        if key.as_str() == PROTO_KEY {
            return PropertyRead::Value(self.proto(obj).map_or(Value::Null, Value::Object));
        }
        match self.lookup(obj, key) {
            None => PropertyRead::Value(Value::Undefined),
            Some((_, prop)) => match &prop.slot {
                Slot::Data { value, .. } => PropertyRead::Value(value.clone()),
                Slot::Accessor { get, .. } if get.is_nullish() => {
                    PropertyRead::Value(Value::Undefined)
                }
                Slot::Accessor { get, .. } => PropertyRead::Getter(get.clone()),
            },
        }
    }

    /// Convenience read for code that knows no accessors are involved;
    /// getters read as `undefined`.
    pub fn get_data(&self, obj: ObjRef, key: &PropertyKey) -> Value {
        match self.get_property(obj, key) {
            PropertyRead::Value(v) => v,
            PropertyRead::Getter(_) => Value::Undefined,
        }
    }

    /// The assignment `obj[key] = value` without strict-mode errors: refused
    /// writes leave the object untouched and report `Done(false)`.
    pub fn put(&mut self, obj: ObjRef, key: &PropertyKey, value: Value) -> PropertyWrite {
        if key.as_str() == PROTO_KEY {
            return PropertyWrite::Done(false);
        }
        let found = self
            .lookup(obj, key)
            .map(|(holder, prop)| (holder, prop.slot.clone()));
        match found {
            Some((_, Slot::Accessor { set, .. })) => {
                if set.is_nullish() {
                    PropertyWrite::Done(false)
                } else {
                    PropertyWrite::Setter(set)
                }
            }
            Some((_, Slot::Data { writable: false, .. })) => PropertyWrite::Done(false),
            Some((holder, Slot::Data { .. })) if holder == obj => {
                if let Some(Slot::Data { value: v, .. }) = self
                    .record_mut(obj)
                    .properties
                    .get_mut(key.as_str())
                    .map(|p| &mut p.slot)
                {
                    *v = value;
                }
                PropertyWrite::Done(true)
            }
            // Absent, or inherited writable data: shadow with an own property.
            _ => PropertyWrite::Done(self.add_own(obj, key, Property::plain(value))),
        }
    }

    fn add_own(&mut self, obj: ObjRef, key: &PropertyKey, prop: Property) -> bool {
        if !self.record(obj).extensible {
            return false;
        }
        if !self.grow_array_length(obj, key) {
            return false;
        }
        self.record_mut(obj)
            .properties
            .insert(key.as_str().to_string(), prop);
        true
    }

    /// Keeps `length` one past the highest index when an index is added.
    fn grow_array_length(&mut self, obj: ObjRef, key: &PropertyKey) -> bool {
        if self.record(obj).class != ObjectClass::Array {
            return true;
        }
        let Some(index) = array_index(key.as_str()) else {
            return true;
        };
        let rec = self.record_mut(obj);
        match rec.properties.get_mut("length").map(|p| &mut p.slot) {
            Some(Slot::Data {
                value: Value::Number(len),
                writable,
            }) => {
                if f64::from(index) >= *len {
                    if !*writable {
                        return false;
                    }
                    *len = f64::from(index) + 1.0;
                }
                true
            }
            _ => true,
        }
    }

    /// Removes an own property. Absent keys count as deleted; a
    /// non-configurable property is kept and `false` returned.
    pub fn delete_property(&mut self, obj: ObjRef, key: &PropertyKey) -> bool {
        let rec = self.record_mut(obj);
        match rec.properties.get(key.as_str()) {
            None => true,
            Some(p) if !p.configurable => false,
            Some(_) => {
                rec.properties.shift_remove(key.as_str());
                true
            }
        }
    }

    pub fn define_property(
        &mut self,
        obj: ObjRef,
        key: &PropertyKey,
        desc: &PropertyDescriptor,
    ) -> Result<(), DefineError> {
        let key_text = || key.as_str().to_string();
        if desc.is_data() && desc.is_accessor() {
            return Err(DefineError::Malformed { key: key_text() });
        }
        let Some(current) = self.own_property(obj, key).cloned() else {
            if !self.record(obj).extensible {
                return Err(DefineError::NotExtensible { key: key_text() });
            }
            if !self.grow_array_length(obj, key) {
                return Err(DefineError::NotConfigurable {
                    key: "length".into(),
                });
            }
            self.record_mut(obj)
                .properties
                .insert(key_text(), desc.to_property());
            return Ok(());
        };
        if desc.is_empty() {
            return Ok(());
        }

        let refuse = || Err(DefineError::NotConfigurable { key: key_text() });
        if !current.configurable {
            if desc.configurable == Some(true) {
                return refuse();
            }
            if desc.enumerable.is_some_and(|e| e != current.enumerable) {
                return refuse();
            }
            match &current.slot {
                Slot::Data { value, writable } => {
                    if desc.is_accessor() {
                        return refuse();
                    }
                    if !writable
                        && (desc.writable == Some(true)
                            || desc.value.as_ref().is_some_and(|v| !v.same_value(value)))
                    {
                        return refuse();
                    }
                }
                Slot::Accessor { get, set } => {
                    if desc.is_data()
                        || desc.get.as_ref().is_some_and(|g| !g.same_value(get))
                        || desc.set.as_ref().is_some_and(|s| !s.same_value(set))
                    {
                        return refuse();
                    }
                }
            }
        }

        let mut updated = current;
        let switch_kind = match updated.slot {
            Slot::Data { .. } => desc.is_accessor(),
            Slot::Accessor { .. } => desc.is_data(),
        };
        if switch_kind {
            updated.slot = if desc.is_accessor() {
                Slot::Accessor {
                    get: Value::Undefined,
                    set: Value::Undefined,
                }
            } else {
                Slot::Data {
                    value: Value::Undefined,
                    writable: false,
                }
            };
        }
        match &mut updated.slot {
            Slot::Data { value, writable } => {
                if let Some(v) = &desc.value {
                    *value = v.clone();
                }
                if let Some(w) = desc.writable {
                    *writable = w;
                }
            }
            Slot::Accessor { get, set } => {
                if let Some(g) = &desc.get {
                    *get = g.clone();
                }
                if let Some(s) = &desc.set {
                    *set = s.clone();
                }
            }
        }
        if let Some(e) = desc.enumerable {
            updated.enumerable = e;
        }
        if let Some(c) = desc.configurable {
            updated.configurable = c;
        }
        self.record_mut(obj)
            .properties
            .insert(key_text(), updated);
        Ok(())
    }

    pub fn prevent_extensions(&mut self, obj: ObjRef) {
        self.record_mut(obj).extensible = false;
    }

    pub fn is_extensible(&self, obj: ObjRef) -> bool {
        self.record(obj).extensible
    }

    pub fn freeze(&mut self, obj: ObjRef) {
        let rec = self.record_mut(obj);
        rec.extensible = false;
        for prop in rec.properties.values_mut() {
            prop.configurable = false;
            if let Slot::Data { writable, .. } = &mut prop.slot {
                *writable = false;
            }
        }
    }

    pub fn is_frozen(&self, obj: ObjRef) -> bool {
        let rec = self.record(obj);
        !rec.extensible
            && rec.properties.values().all(|p| {
                !p.configurable && !matches!(p.slot, Slot::Data { writable: true, .. })
            })
    }

    /// Whether `candidate` appears strictly above `value` in its chain.
    pub fn is_prototype_of(&self, candidate: ObjRef, value: &Value) -> bool {
        let Some(obj) = value.as_object() else {
            return false;
        };
        let mut cursor = self.proto(obj);
        while let Some(p) = cursor {
            if p == candidate {
                return true;
            }
            cursor = self.proto(p);
        }
        false
    }

    pub fn own_keys(&self, obj: ObjRef) -> Vec<PropertyKey> {
        self.record(obj)
            .properties
            .keys()
            .map(|k| PropertyKey(k.clone()))
            .collect()
    }

    /// Enumerable keys, own first then inherited, each object's keys in
    /// insertion order. A key seen on a nearer object (enumerable or not)
    /// hides the same key further up.
    pub fn enumerate_keys(&self, obj: ObjRef) -> Vec<PropertyKey> {
        let mut seen = HashSet::new();
        let mut keys = Vec::new();
        let mut cursor = Some(obj);
        while let Some(o) = cursor {
            for (k, p) in &self.record(o).properties {
                if seen.insert(k.clone()) && p.enumerable {
                    keys.push(PropertyKey(k.clone()));
                }
            }
            cursor = self.proto(o);
        }
        keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(heap: &Heap, obj: ObjRef, key: &str) -> Value {
        heap.get_data(obj, &key.into())
    }

    fn num(v: Value) -> f64 {
        match v {
            Value::Number(n) => n,
            other => panic!("expected number, got {other:?}"),
        }
    }

    fn pilou_dog(heap: &mut Heap) -> ObjRef {
        let dog = heap.create_object(None);
        heap.define_property(
            dog,
            &"name".into(),
            &PropertyDescriptor::data("Pilou".into(), false, true, false),
        )
        .unwrap();
        dog
    }

    #[test]
    fn missing_property_reads_undefined() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        heap.put(o, &"a".into(), 1.0.into());
        heap.put(o, &"b".into(), 2.0.into());
        assert!(matches!(data(&heap, o, "c"), Value::Undefined));
    }

    #[test]
    fn inherited_and_shadowed_reads() {
        let mut heap = Heap::new();
        let cat_proto = heap.create_object(None);
        heap.put(cat_proto, &"numberOfLegs".into(), 4.0.into());
        let garfield = heap.create_object(Some(cat_proto));
        heap.put(garfield, &"color".into(), "red".into());
        assert_eq!(num(data(&heap, garfield, "numberOfLegs")), 4.0);

        heap.put(garfield, &"numberOfLegs".into(), 3.0.into());
        assert_eq!(num(data(&heap, garfield, "numberOfLegs")), 3.0);
        assert_eq!(num(data(&heap, cat_proto, "numberOfLegs")), 4.0);
    }

    #[test]
    fn put_updates_and_creates() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        heap.put(o, &"a".into(), 0.0.into());
        assert!(matches!(heap.put(o, &"a".into(), 10.0.into()), PropertyWrite::Done(true)));
        assert!(matches!(heap.put(o, &"b".into(), 10.0.into()), PropertyWrite::Done(true)));
        let keys: Vec<_> = heap.own_keys(o).iter().map(|k| k.to_string()).collect();
        assert_eq!(keys, ["a", "b"]);
        assert_eq!(num(data(&heap, o, "a")), 10.0);
    }

    #[test]
    fn frozen_object_refuses_new_properties() {
        let mut heap = Heap::new();
        let dog = pilou_dog(&mut heap);
        heap.freeze(dog);
        assert!(matches!(heap.put(dog, &"age".into(), 5.0.into()), PropertyWrite::Done(false)));
        assert!(matches!(data(&heap, dog, "age"), Value::Undefined));
    }

    #[test]
    fn delete_semantics() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        heap.put(o, &"a".into(), 0.0.into());
        heap.put(o, &"b".into(), 5.0.into());
        assert!(heap.delete_property(o, &"b".into()));
        assert_eq!(heap.own_keys(o), vec![PropertyKey::from("a")]);
        assert!(heap.delete_property(o, &"missing".into()));

        let dog = pilou_dog(&mut heap);
        heap.freeze(dog);
        assert!(!heap.delete_property(dog, &"name".into()));
        assert!(matches!(data(&heap, dog, "name"), Value::String(s) if &*s == "Pilou"));
    }

    #[test]
    fn non_writable_property_keeps_value() {
        let mut heap = Heap::new();
        let dog = pilou_dog(&mut heap);
        assert!(matches!(
            heap.put(dog, &"name".into(), "another name".into()),
            PropertyWrite::Done(false)
        ));
        assert!(matches!(data(&heap, dog, "name"), Value::String(s) if &*s == "Pilou"));
    }

    #[test]
    fn non_configurable_redefinition_fails() {
        let mut heap = Heap::new();
        let dog = pilou_dog(&mut heap);
        let err = heap
            .define_property(
                dog,
                &"name".into(),
                &PropertyDescriptor {
                    value: Some("X".into()),
                    ..Default::default()
                },
            )
            .unwrap_err();
        assert_eq!(err, DefineError::NotConfigurable { key: "name".into() });
        // Same value is not a change.
        heap.define_property(
            dog,
            &"name".into(),
            &PropertyDescriptor {
                value: Some("Pilou".into()),
                ..Default::default()
            },
        )
        .unwrap();
    }

    #[test]
    fn writable_non_configurable_value_may_change() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        let key = PropertyKey::from("v");
        heap.define_property(o, &key, &PropertyDescriptor::data(1.0.into(), true, false, false))
            .unwrap();
        heap.define_property(
            o,
            &key,
            &PropertyDescriptor {
                value: Some(2.0.into()),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(num(data(&heap, o, "v")), 2.0);
        assert!(heap
            .define_property(
                o,
                &key,
                &PropertyDescriptor {
                    enumerable: Some(true),
                    ..Default::default()
                }
            )
            .is_err());
    }

    #[test]
    fn define_defaults_to_false_flags() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        heap.define_property(
            o,
            &"x".into(),
            &PropertyDescriptor {
                value: Some(1.0.into()),
                ..Default::default()
            },
        )
        .unwrap();
        let p = heap.own_property(o, &"x".into()).unwrap();
        assert!(!p.enumerable && !p.configurable && !p.is_writable_data());
        assert!(heap.enumerate_keys(o).is_empty());
    }

    #[test]
    fn mixed_descriptor_is_rejected() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        let desc = PropertyDescriptor {
            value: Some(1.0.into()),
            get: Some(Value::Undefined),
            ..Default::default()
        };
        assert!(matches!(
            heap.define_property(o, &"x".into(), &desc),
            Err(DefineError::Malformed { .. })
        ));
    }

    #[test]
    fn define_on_non_extensible_object_fails() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        heap.prevent_extensions(o);
        assert!(matches!(
            heap.define_property(o, &"x".into(), &PropertyDescriptor::data(1.0.into(), true, true, true)),
            Err(DefineError::NotExtensible { .. })
        ));
    }

    #[test]
    fn accessor_reads_report_the_getter() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        let getter = Value::Object(heap.create_object(None));
        heap.define_property(
            o,
            &"g".into(),
            &PropertyDescriptor::accessor(getter.clone(), Value::Undefined, true, true),
        )
        .unwrap();
        assert!(matches!(heap.get_property(o, &"g".into()), PropertyRead::Getter(g) if g.same_value(&getter)));
        // no setter: silent refusal
        assert!(matches!(heap.put(o, &"g".into(), 1.0.into()), PropertyWrite::Done(false)));
    }

    #[test]
    fn prevent_extensions_keeps_deletion() {
        let mut heap = Heap::new();
        let dog = heap.create_object(None);
        heap.put(dog, &"color".into(), "red".into());
        assert!(heap.is_extensible(dog));
        heap.prevent_extensions(dog);
        assert!(!heap.is_extensible(dog));
        assert!(matches!(heap.put(dog, &"age".into(), 5.0.into()), PropertyWrite::Done(false)));
        assert!(heap.delete_property(dog, &"color".into()));
    }

    #[test]
    fn freeze_flags() {
        let mut heap = Heap::new();
        let dog = pilou_dog(&mut heap);
        assert!(!heap.is_frozen(dog));
        heap.freeze(dog);
        assert!(heap.is_frozen(dog));
        let empty = heap.create_object(None);
        heap.freeze(empty);
        assert!(heap.is_frozen(empty));
    }

    #[test]
    fn prototype_membership_is_strict() {
        let mut heap = Heap::new();
        let root = heap.create_object(None);
        let o = heap.create_object(Some(root));
        let bare = heap.create_object(None);
        assert!(heap.is_prototype_of(root, &Value::Object(o)));
        assert!(!heap.is_prototype_of(root, &Value::Object(bare)));
        assert!(!heap.is_prototype_of(o, &Value::Object(o)));
        assert!(!heap.is_prototype_of(root, &Value::Number(1.0)));
    }

    #[test]
    fn proto_cycles_are_rejected() {
        let mut heap = Heap::new();
        let a = heap.create_object(None);
        let b = heap.create_object(Some(a));
        assert_eq!(heap.set_prototype(a, Some(b)), Err(ProtoCycleError));
        assert_eq!(heap.set_prototype(a, Some(a)), Err(ProtoCycleError));
        assert!(heap.set_prototype(b, None).is_ok());
    }

    #[test]
    fn proto_pseudo_key() {
        let mut heap = Heap::new();
        let a = heap.create_object(None);
        let b = heap.create_object(Some(a));
        assert!(matches!(heap.get_property(b, &PROTO_KEY.into()), PropertyRead::Value(Value::Object(p)) if p == a));
        assert!(matches!(heap.get_property(a, &PROTO_KEY.into()), PropertyRead::Value(Value::Null)));
        assert!(matches!(heap.put(b, &PROTO_KEY.into(), Value::Null), PropertyWrite::Done(false)));
        assert_eq!(heap.proto(b), Some(a));
    }

    #[test]
    fn enumeration_order_and_shadowing() {
        let mut heap = Heap::new();
        let proto = heap.create_object(None);
        heap.put(proto, &"x".into(), 1.0.into());
        heap.put(proto, &"y".into(), 2.0.into());
        let child = heap.create_object(Some(proto));
        heap.put(child, &"x".into(), 3.0.into());
        let keys: Vec<_> = heap.enumerate_keys(child).iter().map(|k| k.to_string()).collect();
        assert_eq!(keys, ["x", "y"]);
    }

    #[test]
    fn numeric_keys_are_canonical() {
        let mut heap = Heap::new();
        let o = heap.create_object(None);
        heap.put(o, &PropertyKey::from(1.0), "one".into());
        assert!(matches!(data(&heap, o, "1"), Value::String(s) if &*s == "one"));
        assert_eq!(PropertyKey::from(1.5).as_str(), "1.5");
    }
}
