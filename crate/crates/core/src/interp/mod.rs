//! Tree-walking evaluator.
//!
//! The interpreter holds the current execution context (scope chain,
//! variable frame and `this`) and swaps it on function entry, `with` and
//! `eval`. Runtime errors abort the whole program: the subset has no
//! `try`/`catch`.

pub mod coerce;
pub mod env;
pub mod hoist;

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::object::{Callable, Property, PropertyKey, PropertyRead, PropertyWrite};
use crate::realm::{self, Realm};
use crate::syntax::ast::*;
use crate::syntax::{parse_program, SourceSpan};
use crate::value::{strict_equals, to_boolean, ObjRef, Value};

use env::{Env, Scope, ScopeKind};
use hoist::{hoist_declarations, hoisted_for};

const DEFAULT_MAX_DEPTH: usize = 500;
const STACK_RED_ZONE: usize = 256 * 1024;
const STACK_SEGMENT: usize = 4 * 1024 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Reference,
    Type,
    NotCallable,
    Coercion,
    WithOperand,
    ApplyArgs,
    Define,
    Syntax,
    Range,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ErrorKind::Reference => "ReferenceError",
            ErrorKind::Type => "TypeError",
            ErrorKind::NotCallable => "NotCallableError",
            ErrorKind::Coercion => "CoercionError",
            ErrorKind::WithOperand => "WithOperandError",
            ErrorKind::ApplyArgs => "ApplyArgsError",
            ErrorKind::Define => "DefineError",
            ErrorKind::Syntax => "SyntaxError",
            ErrorKind::Range => "RangeError",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind}: {message}")]
pub struct RuntimeError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl RuntimeError {
    pub fn new(kind: ErrorKind, message: impl Into<String>, span: SourceSpan) -> Self {
        RuntimeError {
            kind,
            message: message.into(),
            span,
        }
    }
}

pub type EvalResult<T> = Result<T, RuntimeError>;

/// Result of running a program or `eval` text.
#[derive(Debug, Clone)]
pub enum Completion {
    /// Normal termination, carrying the value of the last expression
    /// statement executed (undefined if none).
    Normal(Value),
    Error(RuntimeError),
}

impl Completion {
    pub fn is_error(&self) -> bool {
        matches!(self, Completion::Error(_))
    }
}

/// Observable side effects relevant to security monitoring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuntimeEvent {
    /// A property appeared on `window` without a declaration: assignment to
    /// an undeclared name, or a write through `this` bound to `window`.
    GlobalCreated { name: String, span: SourceSpan },
    /// `this` evaluated to `window`.
    ThisBoundToWindow {
        span: SourceSpan,
        in_function: bool,
    },
    EvalInvoked { span: SourceSpan },
}

/// Callbacks fired synchronously during evaluation. Only expression
/// statements outside function bodies and `eval` text are reported.
pub trait EvalHooks {
    fn statement_started(&mut self, _span: SourceSpan) {}
    fn statement_value(&mut self, _span: SourceSpan, _value: &Value, _realm: &Realm) {}
    fn event(&mut self, _event: &RuntimeEvent) {}
}

/// Hooks that do nothing.
pub struct NoHooks;

impl EvalHooks for NoHooks {}

/// How `this` is chosen for an invocation.
#[derive(Debug, Clone)]
pub enum CallShape {
    /// `o.f()`, `o[k]()`, `(o.f)()`: the base object.
    Member { base: Value },
    /// `f()`: the global object.
    Plain,
    /// `f.call(t)` / `f.apply(t, args)`: the explicit receiver.
    Explicit { this_arg: Value },
    /// `new F()`: the freshly created object.
    Construct { fresh: ObjRef },
}

/// Binds `this` for a call site. An explicit receiver of undefined or null
/// falls back to the global object.
pub fn resolve_this(shape: &CallShape, realm: &Realm) -> Value {
    match shape {
        CallShape::Member { base } => base.clone(),
        CallShape::Plain => Value::Object(realm.window),
        CallShape::Explicit { this_arg } if this_arg.is_nullish() => Value::Object(realm.window),
        CallShape::Explicit { this_arg } => this_arg.clone(),
        CallShape::Construct { fresh } => Value::Object(*fresh),
    }
}

#[derive(Clone)]
struct Context {
    env: Env,
    var_env: Env,
    this: Value,
    in_function: bool,
    traced: bool,
}

enum Flow {
    Normal,
    Return(Value),
}

enum Reference {
    Binding { scope: Env, name: String },
    Property { base: Value, key: PropertyKey },
    Unresolved(String),
}

pub struct Interpreter<'a> {
    pub realm: &'a mut Realm,
    hooks: &'a mut dyn EvalHooks,
    ctx: Context,
    depth: usize,
    max_depth: usize,
    completion_value: Value,
    pub(crate) joining: Vec<ObjRef>,
}

/// Runs `program` in `realm`, hoisting its declarations onto `window`.
pub fn eval_program(program: &Program, realm: &mut Realm, hooks: &mut dyn EvalHooks) -> Completion {
    Interpreter::new(realm, hooks).run(program)
}

impl<'a> Interpreter<'a> {
    pub fn new(realm: &'a mut Realm, hooks: &'a mut dyn EvalHooks) -> Self {
        let global = Scope::global(realm.window);
        let ctx = Context {
            env: global.clone(),
            var_env: global,
            this: Value::Object(realm.window),
            in_function: false,
            traced: true,
        };
        Interpreter {
            realm,
            hooks,
            ctx,
            depth: 0,
            max_depth: DEFAULT_MAX_DEPTH,
            completion_value: Value::Undefined,
            joining: Vec::new(),
        }
    }

    /// Limits nested calls; deeper recursion raises a RangeError.
    pub fn with_max_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn run(&mut self, program: &Program) -> Completion {
        self.completion_value = Value::Undefined;
        let result = self
            .instantiate_declarations(&program.body, false)
            .and_then(|_| self.exec_block(&program.body));
        match result {
            Ok(_) => Completion::Normal(std::mem::take(&mut self.completion_value)),
            Err(e) => Completion::Error(e),
        }
    }

    pub(crate) fn emit(&mut self, event: RuntimeEvent) {
        self.hooks.event(&event);
    }

    pub fn window(&self) -> ObjRef {
        self.realm.window
    }

    // ----- declarations -----

    /// Binds hoisted vars (to undefined, keeping existing bindings) and
    /// function declarations in the current variable frame.
    fn instantiate_declarations(&mut self, body: &[Stmt], from_eval: bool) -> EvalResult<()> {
        let hoisted = hoist_declarations(body);
        self.bind_hoisted(&hoisted.var_names, &hoisted.functions, from_eval)
    }

    fn bind_hoisted(
        &mut self,
        var_names: &[String],
        functions: &[Rc<FunctionDef>],
        from_eval: bool,
    ) -> EvalResult<()> {
        let var_env = self.ctx.var_env.clone();
        for name in var_names {
            match &var_env.kind {
                ScopeKind::Declarative(_) => {
                    if !var_env.has_binding(name) {
                        var_env.bind(name, Value::Undefined);
                    }
                }
                ScopeKind::Object { object, .. } => {
                    let key = PropertyKey::from(name.as_str());
                    if self.realm.heap.own_property(*object, &key).is_none() {
                        let mut prop = Property::plain(Value::Undefined);
                        prop.configurable = from_eval;
                        self.realm
                            .heap
                            .record_mut(*object)
                            .properties
                            .insert(name.clone(), prop);
                    }
                }
            }
        }
        for def in functions {
            let func = Value::Object(self.realm.create_function(def.clone(), self.ctx.env.clone()));
            let name = def.name.as_deref().expect("declarations are named");
            match &var_env.kind {
                ScopeKind::Declarative(_) => {
                    var_env.bind(name, func);
                }
                ScopeKind::Object { object, .. } => {
                    let key = PropertyKey::from(name);
                    match self.realm.heap.put(*object, &key, func.clone()) {
                        PropertyWrite::Done(true) => {
                            if !from_eval {
                                if let Some(p) =
                                    self.realm.heap.record_mut(*object).properties.get_mut(name)
                                {
                                    p.configurable = false;
                                }
                            }
                        }
                        PropertyWrite::Setter(setter) => {
                            self.invoke_function(&setter, Value::Object(*object), vec![func], def.span)?;
                        }
                        PropertyWrite::Done(false) => {}
                    }
                }
            }
        }
        Ok(())
    }

    // ----- statements -----

    fn exec_block(&mut self, body: &[Stmt]) -> EvalResult<Flow> {
        for stmt in body {
            if let Flow::Return(v) = self.exec(stmt)? {
                return Ok(Flow::Return(v));
            }
        }
        Ok(Flow::Normal)
    }

    fn exec(&mut self, stmt: &Stmt) -> EvalResult<Flow> {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_SEGMENT, || self.exec_inner(stmt))
    }

    fn exec_inner(&mut self, stmt: &Stmt) -> EvalResult<Flow> {
        match stmt {
            Stmt::Expression(s) => {
                let traced = self.ctx.traced && !s.synthetic;
                if traced {
                    self.hooks.statement_started(s.span);
                }
                let value = self.eval(&s.expr)?;
                if traced {
                    self.hooks.statement_value(s.span, &value, self.realm);
                }
                self.completion_value = value;
                Ok(Flow::Normal)
            }
            Stmt::Var(decl) => {
                self.exec_var(decl)?;
                Ok(Flow::Normal)
            }
            Stmt::Function(_) | Stmt::Empty(_) => Ok(Flow::Normal),
            Stmt::Return { argument, .. } => {
                let value = match argument {
                    Some(e) => self.eval(e)?,
                    None => Value::Undefined,
                };
                Ok(Flow::Return(value))
            }
            Stmt::If {
                test,
                consequent,
                alternate,
                ..
            } => {
                let cond = self.eval(test)?;
                if to_boolean(&cond) {
                    self.exec(consequent)
                } else if let Some(alt) = alternate {
                    self.exec(alt)
                } else {
                    Ok(Flow::Normal)
                }
            }
            Stmt::For {
                init,
                test,
                update,
                body,
                ..
            } => {
                match init {
                    Some(ForInit::Var(decl)) => self.exec_var(decl)?,
                    Some(ForInit::Expr(e)) => {
                        self.eval(e)?;
                    }
                    None => {}
                }
                loop {
                    if let Some(t) = test {
                        let cond = self.eval(t)?;
                        if !to_boolean(&cond) {
                            break;
                        }
                    }
                    if let Flow::Return(v) = self.exec(body)? {
                        return Ok(Flow::Return(v));
                    }
                    if let Some(u) = update {
                        self.eval(u)?;
                    }
                }
                Ok(Flow::Normal)
            }
            Stmt::While { test, body, .. } => {
                loop {
                    let cond = self.eval(test)?;
                    if !to_boolean(&cond) {
                        break;
                    }
                    if let Flow::Return(v) = self.exec(body)? {
                        return Ok(Flow::Return(v));
                    }
                }
                Ok(Flow::Normal)
            }
            Stmt::With { object, body, span } => {
                let value = self.eval(object)?;
                let env = self.enter_with(&value, *span)?;
                let saved = std::mem::replace(&mut self.ctx.env, env);
                let result = self.exec(body);
                self.ctx.env = saved;
                result
            }
            Stmt::Block { body, .. } => self.exec_block(body),
        }
    }

    fn exec_var(&mut self, decl: &VarDecl) -> EvalResult<()> {
        for d in &decl.declarations {
            if let Some(init) = &d.init {
                let reference = self.resolve(&d.name);
                let value = self.eval(init)?;
                self.put_reference(reference, value, d.span, false)?;
            }
        }
        Ok(())
    }

    /// Pushes an object frame for `with`. Only objects are accepted.
    pub fn enter_with(&mut self, value: &Value, span: SourceSpan) -> EvalResult<Env> {
        match value {
            Value::Object(o) => Ok(Scope::with_object(*o, self.ctx.env.clone())),
            other => Err(RuntimeError::new(
                ErrorKind::WithOperand,
                format!("with statement requires an object, got {}", other.tag()),
                span,
            )),
        }
    }

    // ----- references -----

    fn resolve(&self, name: &str) -> Reference {
        let mut scope = Some(self.ctx.env.clone());
        while let Some(s) = scope {
            match &s.kind {
                ScopeKind::Declarative(map) => {
                    if map.borrow().contains_key(name) {
                        return Reference::Binding {
                            scope: s.clone(),
                            name: name.to_string(),
                        };
                    }
                }
                ScopeKind::Object { object, .. } => {
                    let key = PropertyKey::from(name);
                    if self.realm.heap.has_property(*object, &key) {
                        return Reference::Property {
                            base: Value::Object(*object),
                            key,
                        };
                    }
                }
            }
            scope = s.parent.clone();
        }
        Reference::Unresolved(name.to_string())
    }

    fn get_reference(&mut self, reference: &Reference, span: SourceSpan) -> EvalResult<Value> {
        match reference {
            Reference::Binding { scope, name } => Ok(scope.lookup_binding(name).unwrap_or_default()),
            Reference::Property { base, key } => self.get(base, key, span),
            Reference::Unresolved(name) => Err(RuntimeError::new(
                ErrorKind::Reference,
                format!("{name} is not defined"),
                span,
            )),
        }
    }

    fn put_reference(
        &mut self,
        reference: Reference,
        value: Value,
        span: SourceSpan,
        through_this: bool,
    ) -> EvalResult<()> {
        match reference {
            Reference::Binding { scope, name } => {
                scope.bind(&name, value);
            }
            Reference::Property { base, key } => {
                let window = self.window();
                let leaks = through_this
                    && base.as_object() == Some(window)
                    && self.realm.heap.own_property(window, &key).is_none();
                let created = self.put(&base, &key, value, span)?;
                if leaks && created {
                    self.emit(RuntimeEvent::GlobalCreated {
                        name: key.to_string(),
                        span,
                    });
                }
            }
            Reference::Unresolved(name) => {
                let window = Value::Object(self.window());
                let key = PropertyKey::from(name.as_str());
                self.put(&window, &key, value, span)?;
                self.emit(RuntimeEvent::GlobalCreated { name, span });
            }
        }
        Ok(())
    }

    fn eval_reference(&mut self, expr: &Expr) -> EvalResult<Reference> {
        match &expr.kind {
            ExprKind::Identifier(name) => Ok(self.resolve(name)),
            ExprKind::Member { object, property } => {
                let base = self.eval(object)?;
                Ok(Reference::Property {
                    base,
                    key: PropertyKey::from(property.as_str()),
                })
            }
            ExprKind::Index { object, index } => {
                let base = self.eval(object)?;
                let key_value = self.eval(index)?;
                let key = self.to_property_key(&key_value, index.span)?;
                Ok(Reference::Property { base, key })
            }
            _ => Err(RuntimeError::new(
                ErrorKind::Reference,
                "invalid assignment target",
                expr.span,
            )),
        }
    }

    // ----- property access with accessors -----

    /// `base[key]`, calling getters and failing on undefined/null bases.
    pub fn get(&mut self, base: &Value, key: &PropertyKey, span: SourceSpan) -> EvalResult<Value> {
        match base {
            Value::Object(o) => match self.realm.heap.get_property(*o, key) {
                PropertyRead::Value(v) => Ok(v),
                PropertyRead::Getter(getter) => {
                    self.invoke_function(&getter, base.clone(), Vec::new(), span)
                }
            },
            Value::Undefined | Value::Null => Err(RuntimeError::new(
                ErrorKind::Type,
                format!("cannot read property '{key}' of {}", base.tag()),
                span,
            )),
            Value::String(s) => {
                if key.as_str() == "length" {
                    return Ok(Value::Number(s.encode_utf16().count() as f64));
                }
                let ch = crate::number::array_index(key.as_str())
                    .and_then(|i| s.chars().nth(i as usize));
                Ok(ch.map_or(Value::Undefined, |c| Value::string(c.to_string())))
            }
            Value::Boolean(_) | Value::Number(_) => Ok(Value::Undefined),
        }
    }

    /// `base[key] = value` with non-strict semantics. Returns whether a
    /// write took place.
    pub fn put(
        &mut self,
        base: &Value,
        key: &PropertyKey,
        value: Value,
        span: SourceSpan,
    ) -> EvalResult<bool> {
        match base {
            Value::Object(o) => {
                if self.realm.is_array(*o) && key.as_str() == "length" {
                    self.check_array_length(*o, &value, span)?;
                }
                match self.realm.heap.put(*o, key, value.clone()) {
                    PropertyWrite::Done(done) => Ok(done),
                    PropertyWrite::Setter(setter) => {
                        self.invoke_function(&setter, base.clone(), vec![value], span)?;
                        Ok(true)
                    }
                }
            }
            Value::Undefined | Value::Null => Err(RuntimeError::new(
                ErrorKind::Type,
                format!("cannot set property '{key}' of {}", base.tag()),
                span,
            )),
            _ => Ok(false),
        }
    }

    fn check_array_length(&mut self, array: ObjRef, value: &Value, span: SourceSpan) -> EvalResult<()> {
        let requested = self.to_number(value, span)?;
        let current = match self.realm.heap.get_data(array, &"length".into()) {
            Value::Number(n) => n,
            _ => 0.0,
        };
        if requested.fract() != 0.0 || !(0.0..4294967296.0).contains(&requested) {
            return Err(RuntimeError::new(ErrorKind::Range, "invalid array length", span));
        }
        if requested < current {
            return Err(RuntimeError::new(
                ErrorKind::Range,
                "shrinking an array through its length is not supported",
                span,
            ));
        }
        Ok(())
    }

    // ----- expressions -----

    pub fn eval(&mut self, expr: &Expr) -> EvalResult<Value> {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_SEGMENT, || self.eval_inner(expr))
    }

    fn eval_inner(&mut self, expr: &Expr) -> EvalResult<Value> {
        match &expr.kind {
            ExprKind::Literal(lit) => Ok(match lit {
                Literal::Undefined => Value::Undefined,
                Literal::Null => Value::Null,
                Literal::Boolean(b) => Value::Boolean(*b),
                Literal::Number(n) => Value::Number(*n),
                Literal::String(s) => Value::String(s.clone()),
            }),
            ExprKind::Identifier(name) => {
                let reference = self.resolve(name);
                self.get_reference(&reference, expr.span)
            }
            ExprKind::This => {
                let this = self.ctx.this.clone();
                if this.as_object() == Some(self.window()) {
                    let in_function = self.ctx.in_function;
                    self.emit(RuntimeEvent::ThisBoundToWindow {
                        span: expr.span,
                        in_function,
                    });
                }
                Ok(this)
            }
            ExprKind::Function(def) => Ok(Value::Object(
                self.realm.create_function(def.clone(), self.ctx.env.clone()),
            )),
            ExprKind::Object(entries) => {
                let obj = self.realm.create_plain_object();
                for entry in entries {
                    let value = self.eval(&entry.value)?;
                    self.realm
                        .heap
                        .record_mut(obj)
                        .properties
                        .insert(entry.key.clone(), Property::plain(value));
                }
                Ok(Value::Object(obj))
            }
            ExprKind::Array(items) => {
                let values = items
                    .iter()
                    .map(|e| self.eval(e))
                    .collect::<EvalResult<Vec<_>>>()?;
                Ok(Value::Object(self.realm.create_array(values)))
            }
            ExprKind::Member { .. } | ExprKind::Index { .. } => {
                let reference = self.eval_reference(expr)?;
                self.get_reference(&reference, expr.span)
            }
            ExprKind::Call { callee, args } => self.eval_call(callee, args, expr.span),
            ExprKind::New { callee, args } => {
                let func = self.eval(callee)?;
                let args = self.eval_args(args)?;
                self.construct(&func, args, expr.span)
            }
            ExprKind::Assign { target, value } => {
                let through_this = matches!(
                    &target.kind,
                    ExprKind::Member { object, .. } | ExprKind::Index { object, .. }
                        if matches!(object.kind, ExprKind::This)
                );
                let reference = self.eval_reference(target)?;
                let value = self.eval(value)?;
                self.put_reference(reference, value.clone(), expr.span, through_this)?;
                Ok(value)
            }
            ExprKind::Update { op, prefix, target } => {
                let through_this = matches!(
                    &target.kind,
                    ExprKind::Member { object, .. } | ExprKind::Index { object, .. }
                        if matches!(object.kind, ExprKind::This)
                );
                let reference = self.eval_reference(target)?;
                let old = self.get_reference(&reference, target.span)?;
                let old = self.to_number(&old, expr.span)?;
                let new = match op {
                    UpdateOp::Increment => old + 1.0,
                    UpdateOp::Decrement => old - 1.0,
                };
                self.put_reference(reference, Value::Number(new), expr.span, through_this)?;
                Ok(Value::Number(if *prefix { new } else { old }))
            }
            ExprKind::Binary { op, left, right } => self.eval_binary(*op, left, right, expr.span),
            ExprKind::Unary { op, argument } => match op {
                UnaryOp::Not => {
                    let v = self.eval(argument)?;
                    Ok(Value::Boolean(!to_boolean(&v)))
                }
                UnaryOp::Minus => {
                    let v = self.eval(argument)?;
                    Ok(Value::Number(-self.to_number(&v, expr.span)?))
                }
                UnaryOp::Typeof => {
                    let v = match &argument.kind {
                        ExprKind::Identifier(name) => match self.resolve(name) {
                            Reference::Unresolved(_) => Value::Undefined,
                            reference => self.get_reference(&reference, argument.span)?,
                        },
                        _ => self.eval(argument)?,
                    };
                    Ok(Value::string(self.type_of(&v)))
                }
            },
            ExprKind::Delete(argument) => self.eval_delete(argument, expr.span),
        }
    }

    fn eval_args(&mut self, args: &[Expr]) -> EvalResult<Vec<Value>> {
        args.iter().map(|a| self.eval(a)).collect()
    }

    pub fn type_of(&self, v: &Value) -> &'static str {
        match v {
            Value::Undefined => "undefined",
            Value::Null => "object",
            Value::Boolean(_) => "boolean",
            Value::Number(_) => "number",
            Value::String(_) => "string",
            Value::Object(o) if self.realm.heap.is_callable(*o) => "function",
            Value::Object(_) => "object",
        }
    }

    fn eval_delete(&mut self, argument: &Expr, span: SourceSpan) -> EvalResult<Value> {
        let deleted = match &argument.kind {
            ExprKind::Member { .. } | ExprKind::Index { .. } => {
                let Reference::Property { base, key } = self.eval_reference(argument)? else {
                    unreachable!("member expressions resolve to properties")
                };
                match base {
                    Value::Object(o) => self.realm.heap.delete_property(o, &key),
                    Value::Undefined | Value::Null => {
                        return Err(RuntimeError::new(
                            ErrorKind::Type,
                            format!("cannot delete property '{key}' of {}", base.tag()),
                            span,
                        ))
                    }
                    _ => true,
                }
            }
            ExprKind::Identifier(name) => match self.resolve(name) {
                Reference::Binding { .. } => false,
                Reference::Property {
                    base: Value::Object(o),
                    key,
                } => self.realm.heap.delete_property(o, &key),
                Reference::Property { .. } => true,
                Reference::Unresolved(_) => true,
            },
            _ => {
                self.eval(argument)?;
                true
            }
        };
        Ok(Value::Boolean(deleted))
    }

    fn eval_binary(
        &mut self,
        op: BinaryOp,
        left: &Expr,
        right: &Expr,
        span: SourceSpan,
    ) -> EvalResult<Value> {
        match op {
            BinaryOp::And => {
                let l = self.eval(left)?;
                return if to_boolean(&l) { self.eval(right) } else { Ok(l) };
            }
            BinaryOp::Or => {
                let l = self.eval(left)?;
                return if to_boolean(&l) { Ok(l) } else { self.eval(right) };
            }
            _ => {}
        }
        let l = self.eval(left)?;
        let r = self.eval(right)?;
        let value = match op {
            BinaryOp::Add => self.add(&l, &r, span)?,
            BinaryOp::Sub => Value::Number(self.to_number(&l, span)? - self.to_number(&r, span)?),
            BinaryOp::Mul => Value::Number(self.to_number(&l, span)? * self.to_number(&r, span)?),
            BinaryOp::Div => Value::Number(self.to_number(&l, span)? / self.to_number(&r, span)?),
            BinaryOp::Mod => Value::Number(self.to_number(&l, span)? % self.to_number(&r, span)?),
            BinaryOp::Eq => Value::Boolean(self.abstract_equals(&l, &r, span)?),
            BinaryOp::NotEq => Value::Boolean(!self.abstract_equals(&l, &r, span)?),
            BinaryOp::StrictEq => Value::Boolean(strict_equals(&l, &r)),
            BinaryOp::StrictNotEq => Value::Boolean(!strict_equals(&l, &r)),
            BinaryOp::Lt => Value::Boolean(self.less_than(&l, &r, false, span)?.unwrap_or(false)),
            BinaryOp::Gt => Value::Boolean(self.less_than(&r, &l, true, span)?.unwrap_or(false)),
            BinaryOp::LtEq => Value::Boolean(!self.less_than(&r, &l, true, span)?.unwrap_or(true)),
            BinaryOp::GtEq => Value::Boolean(!self.less_than(&l, &r, false, span)?.unwrap_or(true)),
            BinaryOp::And | BinaryOp::Or => unreachable!(),
        };
        Ok(value)
    }

    // ----- calls -----

    fn eval_call(&mut self, callee: &Expr, args: &[Expr], span: SourceSpan) -> EvalResult<Value> {
        let (func, shape) = match &callee.kind {
            ExprKind::Member { .. } | ExprKind::Index { .. } => {
                let Reference::Property { base, key } = self.eval_reference(callee)? else {
                    unreachable!("member expressions resolve to properties")
                };
                let func = self.get(&base, &key, callee.span)?;
                (func, CallShape::Member { base })
            }
            ExprKind::Identifier(name) => {
                let reference = self.resolve(name);
                let func = self.get_reference(&reference, callee.span)?;
                let shape = match reference {
                    // Calls resolved through a `with` object bind `this` to it.
                    Reference::Property { base, .. } if base.as_object() != Some(self.window()) => {
                        CallShape::Member { base }
                    }
                    _ => CallShape::Plain,
                };
                (func, shape)
            }
            _ => (self.eval(callee)?, CallShape::Plain),
        };
        let args = self.eval_args(args)?;
        if !self.is_callable(&func) {
            return Err(RuntimeError::new(
                ErrorKind::NotCallable,
                format!("{} is not a function", describe_callee(callee)),
                callee.span,
            ));
        }
        let this = resolve_this(&shape, self.realm);
        self.invoke_function(&func, this, args, span)
    }

    pub fn is_callable(&self, v: &Value) -> bool {
        v.as_object().is_some_and(|o| self.realm.heap.is_callable(o))
    }

    /// Calls `func` with an explicit receiver.
    pub fn invoke_function(
        &mut self,
        func: &Value,
        this: Value,
        args: Vec<Value>,
        span: SourceSpan,
    ) -> EvalResult<Value> {
        let callable = func
            .as_object()
            .and_then(|o| self.realm.heap.record(o).callable.clone());
        let Some(callable) = callable else {
            return Err(RuntimeError::new(
                ErrorKind::NotCallable,
                format!("{} is not a function", self.type_of(func)),
                span,
            ));
        };
        if self.depth >= self.max_depth {
            return Err(RuntimeError::new(
                ErrorKind::Range,
                "maximum call depth exceeded",
                span,
            ));
        }
        self.depth += 1;
        // Deep user recursion needs more native stack than test threads get.
        let result = stacker::maybe_grow(STACK_RED_ZONE, STACK_SEGMENT, || match callable {
            Callable::Builtin(b) => realm::call_builtin(self, b, this, args, span),
            Callable::User { def, env } => self.call_user(func, &def, env, this, args),
        });
        self.depth -= 1;
        result
    }

    fn call_user(
        &mut self,
        func: &Value,
        def: &Rc<FunctionDef>,
        closure: Env,
        this: Value,
        args: Vec<Value>,
    ) -> EvalResult<Value> {
        let frame = Scope::declarative(closure);
        // A named function expression can refer to itself by name.
        if let (false, Some(name)) = (def.is_declaration, &def.name) {
            frame.bind(name, func.clone());
        }
        let mut args = args.into_iter();
        for param in &def.params {
            frame.bind(param, args.next().unwrap_or_default());
        }
        let ctx = Context {
            env: frame.clone(),
            var_env: frame,
            this,
            in_function: true,
            traced: false,
        };
        let saved = std::mem::replace(&mut self.ctx, ctx);
        let hoisted = hoisted_for(def);
        let result = self
            .bind_hoisted(&hoisted.var_names, &hoisted.functions, false)
            .and_then(|_| self.exec_block(&def.body));
        self.ctx = saved;
        match result? {
            Flow::Return(v) => Ok(v),
            Flow::Normal => Ok(Value::Undefined),
        }
    }

    /// `new func(args)`: the fresh object unless the body returns an object.
    pub fn construct(&mut self, func: &Value, args: Vec<Value>, span: SourceSpan) -> EvalResult<Value> {
        let Some(f) = func.as_object().filter(|o| self.realm.heap.is_callable(*o)) else {
            return Err(RuntimeError::new(
                ErrorKind::NotCallable,
                format!("{} is not a constructor", self.type_of(func)),
                span,
            ));
        };
        if let Some(Callable::Builtin(b)) = &self.realm.heap.record(f).callable {
            return realm::construct_builtin(self, *b, args, span);
        }
        let proto = match self.get(func, &"prototype".into(), span)? {
            Value::Object(p) => p,
            _ => self.realm.intrinsics.object_prototype,
        };
        let fresh = self.realm.heap.create_object(Some(proto));
        let this = resolve_this(&CallShape::Construct { fresh }, self.realm);
        let result = self.invoke_function(func, this, args, span)?;
        Ok(match result {
            Value::Object(_) => result,
            _ => Value::Object(fresh),
        })
    }

    /// A plain call: `this` is the global object.
    pub fn call_without_new(&mut self, func: &Value, args: Vec<Value>, span: SourceSpan) -> EvalResult<Value> {
        let this = resolve_this(&CallShape::Plain, self.realm);
        self.invoke_function(func, this, args, span)
    }

    /// Evaluates `text` in the caller's scope. Its `var`s land in the
    /// caller's variable frame. Returns the last expression statement value.
    pub fn direct_eval(&mut self, text: &str, span: SourceSpan) -> EvalResult<Value> {
        let program = parse_program(text).map_err(|e| {
            RuntimeError::new(ErrorKind::Syntax, format!("in eval: {}", e.message), span)
        })?;
        let saved_traced = std::mem::replace(&mut self.ctx.traced, false);
        let saved_value = std::mem::take(&mut self.completion_value);
        let result = self
            .instantiate_declarations(&program.body, true)
            .and_then(|_| self.exec_block(&program.body));
        self.ctx.traced = saved_traced;
        let value = std::mem::replace(&mut self.completion_value, saved_value);
        result.map(|_| value)
    }
}

fn describe_callee(callee: &Expr) -> String {
    match &callee.kind {
        ExprKind::Identifier(name) => name.clone(),
        ExprKind::Member { object, property } => format!("{}.{property}", describe_callee(object)),
        ExprKind::Index { object, .. } => format!("{}[...]", describe_callee(object)),
        ExprKind::This => "this".into(),
        _ => "expression".into(),
    }
}
