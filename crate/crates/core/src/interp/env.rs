//! Scope chains. Function frames are declarative; the global frame and
//! `with` frames are backed by objects.

use std::cell::RefCell;
use std::rc::Rc;

use indexmap::IndexMap;

use crate::value::{ObjRef, Value};

pub type Env = Rc<Scope>;

#[derive(Debug)]
pub struct Scope {
    pub kind: ScopeKind,
    pub parent: Option<Env>,
}

#[derive(Debug)]
pub enum ScopeKind {
    Declarative(RefCell<IndexMap<String, Value>>),
    /// Names resolve to the object's properties, inherited ones included.
    Object { object: ObjRef, with: bool },
}

impl Scope {
    pub fn global(window: ObjRef) -> Env {
        Rc::new(Scope {
            kind: ScopeKind::Object {
                object: window,
                with: false,
            },
            parent: None,
        })
    }

    pub fn declarative(parent: Env) -> Env {
        Rc::new(Scope {
            kind: ScopeKind::Declarative(RefCell::new(IndexMap::new())),
            parent: Some(parent),
        })
    }

    pub fn with_object(object: ObjRef, parent: Env) -> Env {
        Rc::new(Scope {
            kind: ScopeKind::Object { object, with: true },
            parent: Some(parent),
        })
    }

    /// Binds `name` in a declarative frame, overwriting any previous value.
    /// Returns false for object frames.
    pub fn bind(&self, name: &str, value: Value) -> bool {
        match &self.kind {
            ScopeKind::Declarative(map) => {
                map.borrow_mut().insert(name.to_string(), value);
                true
            }
            ScopeKind::Object { .. } => false,
        }
    }

    pub fn has_binding(&self, name: &str) -> bool {
        match &self.kind {
            ScopeKind::Declarative(map) => map.borrow().contains_key(name),
            ScopeKind::Object { .. } => false,
        }
    }

    pub fn lookup_binding(&self, name: &str) -> Option<Value> {
        match &self.kind {
            ScopeKind::Declarative(map) => map.borrow().get(name).cloned(),
            ScopeKind::Object { .. } => None,
        }
    }
}
