//! Reference evaluator over the syntax tree.
//!
//! Every read of a variable deep-copies the value and every binding owns its
//! own tree, so no two variables can ever share storage. It runs both surface
//! and desugared programs, and it shares nothing with the IR pipeline beyond
//! the syntax tree and the error type. Tests treat its output as ground truth.

use std::collections::HashMap;
use std::fmt::Write;
use std::rc::Rc;

use crate::builtin::Builtin;
use crate::frontend::ast::*;
use crate::runtime::{EvalError, MAX_CALL_DEPTH};

type OResult<T> = Result<T, EvalError>;

#[derive(Debug, Clone)]
pub enum OValue {
    Unit,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Tuple(Vec<OValue>),
    Array(Vec<OValue>),
    Record(Vec<(String, OValue)>),
    Closure(Box<OClosure>),
}

#[derive(Debug, Clone)]
pub struct OClosure {
    /// Set for top-level functions used as values.
    pub name: Option<String>,
    pub params: Vec<Param>,
    pub body: Rc<Block>,
    pub env: HashMap<String, OValue>,
}

impl OValue {
    fn kind(&self) -> &'static str {
        match self {
            OValue::Unit => "unit",
            OValue::Bool(_) => "bool",
            OValue::Int(_) => "int",
            OValue::Float(_) => "float",
            OValue::Str(_) => "string",
            OValue::Tuple(_) => "tuple",
            OValue::Array(_) => "array",
            OValue::Record(_) => "record",
            OValue::Closure(_) => "closure",
        }
    }

    /// Text as `print` shows it: strings unquoted at top level.
    pub fn render(&self) -> String {
        match self {
            OValue::Str(s) => s.clone(),
            other => {
                let mut out = String::new();
                other.render_nested(&mut out);
                out
            }
        }
    }

    fn render_nested(&self, out: &mut String) {
        fn items(out: &mut String, xs: &[OValue]) {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                x.render_nested(out);
            }
        }
        match self {
            OValue::Unit => out.push_str("()"),
            OValue::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            OValue::Int(n) => {
                let _ = write!(out, "{n}");
            }
            OValue::Float(x) => {
                let _ = write!(out, "{x:?}");
            }
            OValue::Str(s) => crate::frontend::write_quoted(out, s),
            OValue::Tuple(xs) => {
                out.push('(');
                items(out, xs);
                if xs.len() == 1 {
                    out.push(',');
                }
                out.push(')');
            }
            OValue::Array(xs) => {
                out.push('[');
                items(out, xs);
                out.push(']');
            }
            OValue::Record(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(k);
                    out.push_str(": ");
                    v.render_nested(out);
                }
                out.push('}');
            }
            OValue::Closure(c) => match &c.name {
                Some(n) => {
                    let _ = write!(out, "<fn {n}>");
                }
                None => out.push_str("<closure>"),
            },
        }
    }
}

fn deep_eq(a: &OValue, b: &OValue) -> OResult<bool> {
    use OValue::*;
    if matches!(a, Closure(_)) || matches!(b, Closure(_)) {
        return Err(EvalError::type_error("closures cannot be compared"));
    }
    Ok(match (a, b) {
        (Unit, Unit) => true,
        (Bool(x), Bool(y)) => x == y,
        (Int(x), Int(y)) => x == y,
        (Int(x), Float(y)) => (*x as f64) == *y,
        (Float(x), Int(y)) => *x == (*y as f64),
        (Float(x), Float(y)) => x == y,
        (Str(x), Str(y)) => x == y,
        (Tuple(xs), Tuple(ys)) | (Array(xs), Array(ys)) => {
            if xs.len() != ys.len() {
                return Ok(false);
            }
            for (x, y) in xs.iter().zip(ys) {
                if !deep_eq(x, y)? {
                    return Ok(false);
                }
            }
            true
        }
        (Record(xs), Record(ys)) => {
            if xs.len() != ys.len() {
                return Ok(false);
            }
            for (k, x) in xs {
                match ys.iter().find(|(k2, _)| k2 == k) {
                    None => return Ok(false),
                    Some((_, y)) => {
                        if !deep_eq(x, y)? {
                            return Ok(false);
                        }
                    }
                }
            }
            true
        }
        _ => false,
    })
}

fn as_f64(v: &OValue) -> Option<f64> {
    match v {
        OValue::Int(n) => Some(*n as f64),
        OValue::Float(x) => Some(*x),
        _ => None,
    }
}

fn binary(op: BinOp, a: OValue, b: OValue) -> OResult<OValue> {
    use OValue::*;
    let mismatch = || EvalError::type_error(format!("`{}` on {} and {}", op.symbol(), a.kind(), b.kind()));
    match op {
        BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div => {
            if let (Int(x), Int(y)) = (&a, &b) {
                return Ok(Int(match op {
                    BinOp::Add => x.wrapping_add(*y),
                    BinOp::Sub => x.wrapping_sub(*y),
                    BinOp::Mul => x.wrapping_mul(*y),
                    _ => {
                        if *y == 0 {
                            return Err(EvalError::DivisionByZero);
                        }
                        x.wrapping_div(*y)
                    }
                }));
            }
            if let (BinOp::Add, Str(x), Str(y)) = (op, &a, &b) {
                return Ok(Str(format!("{x}{y}")));
            }
            let (x, y) = as_f64(&a).zip(as_f64(&b)).ok_or_else(mismatch)?;
            Ok(Float(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                _ => x / y,
            }))
        }
        BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => {
            let ord = match (&a, &b) {
                (Str(x), Str(y)) => x.partial_cmp(y),
                _ => {
                    let (x, y) = as_f64(&a).zip(as_f64(&b)).ok_or_else(mismatch)?;
                    x.partial_cmp(&y)
                }
            };
            use std::cmp::Ordering::*;
            Ok(Bool(match (op, ord) {
                (_, None) => false,
                (BinOp::Lt, Some(o)) => o == Less,
                (BinOp::Le, Some(o)) => o != Greater,
                (BinOp::Gt, Some(o)) => o == Greater,
                (_, Some(o)) => o != Less,
            }))
        }
        BinOp::Eq => Ok(Bool(deep_eq(&a, &b)?)),
        BinOp::Ne => Ok(Bool(!deep_eq(&a, &b)?)),
        BinOp::And | BinOp::Or => unreachable!("short-circuit operators are evaluated lazily"),
    }
}

fn index_of(key: &OValue, len: usize) -> OResult<usize> {
    match key {
        OValue::Int(i) if *i >= 0 && (*i as usize) < len => Ok(*i as usize),
        OValue::Int(i) => Err(EvalError::IndexOutOfBounds { index: *i, len }),
        other => Err(EvalError::type_error(format!("cannot index with {}", other.kind()))),
    }
}

fn get(container: &OValue, key: &OValue) -> OResult<OValue> {
    match (container, key) {
        (OValue::Array(xs) | OValue::Tuple(xs), _) => Ok(xs[index_of(key, xs.len())?].clone()),
        (OValue::Record(fields), OValue::Str(k)) => fields
            .iter()
            .find(|(name, _)| name == k)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| EvalError::UnknownField(k.clone())),
        (c, k) => Err(EvalError::type_error(format!("cannot read {} of {}", k.kind(), c.kind()))),
    }
}

/// Mutable access to a component of an owned tree, for updates.
fn slot<'v>(container: &'v mut OValue, key: &OValue, insert: bool) -> OResult<&'v mut OValue> {
    match (container, key) {
        (OValue::Array(xs), _) => {
            let i = index_of(key, xs.len())?;
            Ok(&mut xs[i])
        }
        (OValue::Record(fields), OValue::Str(k)) => {
            match fields.iter().position(|(name, _)| name == k) {
                Some(i) => Ok(&mut fields[i].1),
                None if insert => {
                    fields.push((k.clone(), OValue::Unit));
                    Ok(&mut fields.last_mut().unwrap().1)
                }
                None => Err(EvalError::UnknownField(k.clone())),
            }
        }
        (c, k) => Err(EvalError::type_error(format!("cannot update {} of {}", k.kind(), c.kind()))),
    }
}

enum Flow {
    Normal,
    Break,
    Continue,
    Return(OValue),
}

enum Target<'p> {
    Function(&'p FnDecl),
    Builtin(Builtin),
    Closure(Box<OClosure>),
}

/// Result of running a program's `main` under the reference evaluator.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub output: String,
    pub exit: OValue,
}

pub struct Oracle<'p> {
    program: &'p Program,
    output: String,
    steps: u64,
    max_steps: Option<u64>,
    depth: usize,
}

/// Runs `main` and captures everything it prints.
pub fn run(program: &Program) -> OResult<OracleRun> {
    let mut oracle = Oracle::new(program);
    let exit = oracle.run_main()?;
    Ok(OracleRun { output: oracle.output, exit })
}

impl<'p> Oracle<'p> {
    pub fn new(program: &'p Program) -> Self {
        Oracle { program, output: String::new(), steps: 0, max_steps: None, depth: 0 }
    }

    pub fn with_max_steps(mut self, steps: u64) -> Self {
        self.max_steps = Some(steps);
        self
    }

    pub fn output(&self) -> &str {
        &self.output
    }

    pub fn run_main(&mut self) -> OResult<OValue> {
        match self.program.function("main") {
            Some(f) if f.params.is_empty() => Ok(self.call("main", Vec::new())?.0),
            _ => Err(EvalError::NoMain),
        }
    }

    /// Calls a top-level function; returns the result and the final values
    /// of its swapped parameters.
    pub fn call(&mut self, name: &str, args: Vec<OValue>) -> OResult<(OValue, Vec<OValue>)> {
        let f = self.program.function(name).ok_or_else(|| EvalError::UnknownFunction(name.into()))?;
        if f.params.len() != args.len() {
            return Err(EvalError::ArityMismatch { name: name.into(), expected: f.params.len(), found: args.len() });
        }
        self.invoke(&f.params, &f.body, HashMap::new(), args)
    }

    fn invoke(
        &mut self,
        params: &[Param],
        body: &Block,
        mut env: HashMap<String, OValue>,
        args: Vec<OValue>,
    ) -> OResult<(OValue, Vec<OValue>)> {
        if self.depth >= MAX_CALL_DEPTH {
            return Err(EvalError::CallDepthExceeded(MAX_CALL_DEPTH));
        }
        self.depth += 1;
        let result = stacker::maybe_grow(64 * 1024, 1024 * 1024, || self.invoke_body(params, body, &mut env, args));
        self.depth -= 1;
        result
    }

    fn invoke_body(
        &mut self,
        params: &[Param],
        body: &Block,
        env: &mut HashMap<String, OValue>,
        args: Vec<OValue>,
    ) -> OResult<(OValue, Vec<OValue>)> {
        for (p, a) in params.iter().zip(args) {
            env.insert(p.name.clone(), a);
        }
        let result = match self.block(body, env)? {
            Flow::Return(v) => v,
            _ => OValue::Unit,
        };
        let finals = params
            .iter()
            .filter(|p| p.swapped)
            .map(|p| env.get(&p.name).cloned().unwrap_or(OValue::Unit))
            .collect();
        Ok((result, finals))
    }

    fn tick(&mut self) -> OResult<()> {
        self.steps += 1;
        match self.max_steps {
            Some(max) if self.steps > max => Err(EvalError::StepBudgetExceeded(max)),
            _ => Ok(()),
        }
    }

    fn block(&mut self, stmts: &Block, env: &mut HashMap<String, OValue>) -> OResult<Flow> {
        for s in stmts {
            match self.stmt(s, env)? {
                Flow::Normal => {}
                other => return Ok(other),
            }
        }
        Ok(Flow::Normal)
    }

    fn keys(&mut self, path: &Path, env: &mut HashMap<String, OValue>) -> OResult<Vec<OValue>> {
        let mut keys = Vec::with_capacity(path.accessors.len());
        for acc in &path.accessors {
            keys.push(match acc {
                Accessor::Field(name) => OValue::Str(name.clone()),
                Accessor::Index(e) => self.expr(e, env)?,
            });
        }
        Ok(keys)
    }

    fn read_path(&self, root: &str, keys: &[OValue], env: &HashMap<String, OValue>) -> OResult<OValue> {
        let mut value = env
            .get(root)
            .cloned()
            .ok_or_else(|| EvalError::Internal(format!("unbound variable `{root}`")))?;
        for k in keys {
            value = get(&value, k)?;
        }
        Ok(value)
    }

    fn write_path(root: &str, keys: &[OValue], value: OValue, env: &mut HashMap<String, OValue>) -> OResult<()> {
        let Some((last, prefix)) = keys.split_last() else {
            env.insert(root.to_string(), value);
            return Ok(());
        };
        let mut cur = env
            .get_mut(root)
            .ok_or_else(|| EvalError::Internal(format!("unbound variable `{root}`")))?;
        for k in prefix {
            cur = slot(cur, k, false)?;
        }
        *slot(cur, last, true)? = value;
        Ok(())
    }

    fn stmt(&mut self, s: &Stmt, env: &mut HashMap<String, OValue>) -> OResult<Flow> {
        self.tick()?;
        match &s.kind {
            StmtKind::Assign { target, value } => {
                let keys = self.keys(target, env)?;
                let v = self.expr(value, env)?;
                Self::write_path(&target.root, &keys, v, env)?;
            }
            StmtKind::Destructure { names, value } => {
                let v = self.expr(value, env)?;
                let items = match v {
                    OValue::Array(xs) | OValue::Tuple(xs) if xs.len() == names.len() => xs,
                    other => {
                        return Err(EvalError::type_error(format!(
                            "cannot destructure {} into {} names",
                            other.kind(),
                            names.len()
                        )))
                    }
                };
                for (n, x) in names.iter().zip(items) {
                    env.insert(n.clone(), x);
                }
            }
            StmtKind::CompoundAssign { target, op, value } => {
                let keys = self.keys(target, env)?;
                let current = self.read_path(&target.root, &keys, env)?;
                let rhs = self.expr(value, env)?;
                let v = binary(*op, current, rhs)?;
                Self::write_path(&target.root, &keys, v, env)?;
            }
            StmtKind::Call(call) => {
                self.call_expr(call, env)?;
            }
            StmtKind::While { cond, body } => loop {
                if !self.condition(cond, env)? {
                    break;
                }
                match self.block(body, env)? {
                    Flow::Break => break,
                    Flow::Return(v) => return Ok(Flow::Return(v)),
                    Flow::Normal | Flow::Continue => {}
                }
                self.tick()?;
            },
            StmtKind::If { cond, then_block, else_block } => {
                if self.condition(cond, env)? {
                    return self.block(then_block, env);
                } else if let Some(b) = else_block {
                    return self.block(b, env);
                }
            }
            StmtKind::Return(value) => {
                let v = match value {
                    Some(e) => self.expr(e, env)?,
                    None => OValue::Unit,
                };
                return Ok(Flow::Return(v));
            }
            StmtKind::Break => return Ok(Flow::Break),
            StmtKind::Continue => return Ok(Flow::Continue),
        }
        Ok(Flow::Normal)
    }

    fn condition(&mut self, cond: &Expr, env: &mut HashMap<String, OValue>) -> OResult<bool> {
        match self.expr(cond, env)? {
            OValue::Bool(b) => Ok(b),
            other => Err(EvalError::type_error(format!("condition must be bool, got {}", other.kind()))),
        }
    }

    fn expr(&mut self, e: &Expr, env: &mut HashMap<String, OValue>) -> OResult<OValue> {
        match &e.kind {
            ExprKind::Lit(lit) => Ok(match lit {
                Literal::Int(n) => OValue::Int(*n),
                Literal::Float(x) => OValue::Float(*x),
                Literal::Bool(b) => OValue::Bool(*b),
                Literal::Str(s) => OValue::Str(s.clone()),
                Literal::Unit => OValue::Unit,
            }),
            ExprKind::Var(name) => {
                if let Some(v) = env.get(name) {
                    return Ok(v.clone());
                }
                match self.program.function(name) {
                    Some(f) => Ok(OValue::Closure(Box::new(OClosure {
                        name: Some(f.name.clone()),
                        params: f.params.clone(),
                        body: Rc::new(f.body.clone()),
                        env: HashMap::new(),
                    }))),
                    None => Err(EvalError::Internal(format!("unbound variable `{name}`"))),
                }
            }
            ExprKind::Index(base, index) => {
                let b = self.expr(base, env)?;
                let i = self.expr(index, env)?;
                get(&b, &i)
            }
            ExprKind::Field(base, name) => {
                let b = self.expr(base, env)?;
                get(&b, &OValue::Str(name.clone()))
            }
            ExprKind::Call(call) => self.call_expr(call, env),
            ExprKind::Binary(op @ (BinOp::And | BinOp::Or), lhs, rhs) => {
                let want = *op == BinOp::And;
                match self.expr(lhs, env)? {
                    OValue::Bool(b) if b != want => Ok(OValue::Bool(b)),
                    OValue::Bool(_) => match self.expr(rhs, env)? {
                        OValue::Bool(b) => Ok(OValue::Bool(b)),
                        other => Err(EvalError::type_error(format!("`{}` on {}", op.symbol(), other.kind()))),
                    },
                    other => Err(EvalError::type_error(format!("`{}` on {}", op.symbol(), other.kind()))),
                }
            }
            ExprKind::Binary(op, lhs, rhs) => {
                let a = self.expr(lhs, env)?;
                let b = self.expr(rhs, env)?;
                binary(*op, a, b)
            }
            ExprKind::Unary(op, operand) => match (op, self.expr(operand, env)?) {
                (UnOp::Neg, OValue::Int(n)) => Ok(OValue::Int(n.wrapping_neg())),
                (UnOp::Neg, OValue::Float(x)) => Ok(OValue::Float(-x)),
                (UnOp::Not, OValue::Bool(b)) => Ok(OValue::Bool(!b)),
                (op, v) => Err(EvalError::type_error(format!("`{}` on {}", op.symbol(), v.kind()))),
            },
            ExprKind::Array(items) => Ok(OValue::Array(self.exprs(items, env)?)),
            ExprKind::Tuple(items) => Ok(OValue::Tuple(self.exprs(items, env)?)),
            ExprKind::Record(fields) => {
                let mut out = Vec::with_capacity(fields.len());
                for (k, v) in fields {
                    out.push((k.clone(), self.expr(v, env)?));
                }
                Ok(OValue::Record(out))
            }
            ExprKind::Closure(c) => Ok(OValue::Closure(Box::new(OClosure {
                name: None,
                params: c.params.clone(),
                body: Rc::new(c.body.clone()),
                env: env.clone(),
            }))),
        }
    }

    fn exprs(&mut self, items: &[Expr], env: &mut HashMap<String, OValue>) -> OResult<Vec<OValue>> {
        items.iter().map(|e| self.expr(e, env)).collect()
    }

    fn call_expr(&mut self, call: &Call, env: &mut HashMap<String, OValue>) -> OResult<OValue> {
        self.tick()?;
        let target = match &call.callee.kind {
            ExprKind::Var(name) if !env.contains_key(name) => {
                if let Some(f) = self.program.function(name) {
                    Target::Function(f)
                } else if let Some(b) = Builtin::from_name(name) {
                    Target::Builtin(b)
                } else {
                    return Err(EvalError::UnknownFunction(name.clone()));
                }
            }
            _ => match self.expr(&call.callee, env)? {
                OValue::Closure(c) => Target::Closure(c),
                other => return Err(EvalError::type_error(format!("cannot call {}", other.kind()))),
            },
        };

        let mut args = Vec::with_capacity(call.args.len());
        let mut write_back = Vec::new();
        for arg in &call.args {
            match arg {
                Arg::Plain(e) => args.push(self.expr(e, env)?),
                Arg::Swap(path) => {
                    let keys = self.keys(path, env)?;
                    args.push(self.read_path(&path.root, &keys, env)?);
                    write_back.push((path.root.as_str(), keys));
                }
            }
        }
        let site = call.swap_signature();

        let (result, finals) = match target {
            Target::Function(f) => {
                check_signature(&f.name, &f.swap_signature(), &site)?;
                self.invoke(&f.params, &f.body, HashMap::new(), args)?
            }
            Target::Closure(c) => {
                let name = c.name.clone().unwrap_or_else(|| "<closure>".into());
                let sig: Vec<bool> = c.params.iter().map(|p| p.swapped).collect();
                check_signature(&name, &sig, &site)?;
                let OClosure { params, body, env: captured, .. } = *c;
                self.invoke(&params, &body, captured, args)?
            }
            Target::Builtin(b) => {
                if let Some(sig) = b.swap_signature() {
                    check_signature(b.name(), sig, &site)?;
                } else if !b.accepts(&site) {
                    return Err(EvalError::SwapArityMismatch { name: b.name().into() });
                }
                self.builtin(b, args)?
            }
        };
        for ((root, keys), v) in write_back.into_iter().zip(finals) {
            Self::write_path(root, &keys, v, env)?;
        }
        Ok(result)
    }

    fn builtin(&mut self, b: Builtin, args: Vec<OValue>) -> OResult<(OValue, Vec<OValue>)> {
        let mut args = args.into_iter();
        macro_rules! next {
            () => {
                args.next().expect("arity checked")
            };
        }
        let none = Vec::new();
        Ok(match b {
            Builtin::Print => {
                let parts: Vec<String> = args.by_ref().map(|v| v.render()).collect();
                self.output.push_str(&parts.join(" "));
                self.output.push('\n');
                (OValue::Unit, none)
            }
            Builtin::Len => match next!() {
                OValue::Array(xs) | OValue::Tuple(xs) => (OValue::Int(xs.len() as i64), none),
                OValue::Record(fs) => (OValue::Int(fs.len() as i64), none),
                OValue::Str(s) => (OValue::Int(s.chars().count() as i64), none),
                other => return Err(EvalError::type_error(format!("len of {}", other.kind()))),
            },
            Builtin::Get => {
                let c = next!();
                let k = next!();
                (get(&c, &k)?, none)
            }
            Builtin::Append => match (next!(), next!()) {
                (OValue::Array(mut xs), x) => {
                    xs.push(x);
                    (OValue::Unit, vec![OValue::Array(xs)])
                }
                (other, _) => return Err(EvalError::type_error(format!("append to {}", other.kind()))),
            },
            Builtin::Pop => match next!() {
                OValue::Array(mut xs) => match xs.pop() {
                    Some(x) => (x, vec![OValue::Array(xs)]),
                    None => return Err(EvalError::IndexOutOfBounds { index: -1, len: 0 }),
                },
                other => return Err(EvalError::type_error(format!("pop from {}", other.kind()))),
            },
            Builtin::Set => {
                let mut c = next!();
                let k = next!();
                let v = next!();
                *slot(&mut c, &k, true)? = v;
                (OValue::Unit, vec![c])
            }
            Builtin::Extract => {
                let mut c = next!();
                let k = next!();
                let component = std::mem::replace(slot(&mut c, &k, false)?, OValue::Unit);
                (component, vec![c])
            }
            Builtin::Str => (OValue::Str(next!().render()), none),
            Builtin::Float => match next!() {
                OValue::Int(n) => (OValue::Float(n as f64), none),
                OValue::Float(x) => (OValue::Float(x), none),
                other => return Err(EvalError::type_error(format!("float of {}", other.kind()))),
            },
            Builtin::Int => match next!() {
                OValue::Int(n) => (OValue::Int(n), none),
                OValue::Float(x) => (OValue::Int(x as i64), none),
                other => return Err(EvalError::type_error(format!("int of {}", other.kind()))),
            },
            Builtin::ExpectLen => return Err(EvalError::Internal("expect_len is not callable".into())),
        })
    }
}

fn check_signature(name: &str, sig: &[bool], site: &[bool]) -> OResult<()> {
    if sig.len() != site.len() {
        return Err(EvalError::ArityMismatch { name: name.into(), expected: sig.len(), found: site.len() });
    }
    if sig != site {
        return Err(EvalError::SwapArityMismatch { name: name.into() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;

    fn out(src: &str) -> String {
        run(&parse_source(src).unwrap()).unwrap().output
    }

    #[test]
    fn switch_swaps() {
        let src = "fn switch(&x, &y) {\n  [x, y] = [y, x]\n  return\n}\na = 1\nb = 2\nswitch(&a, &b)\nprint(a, b)";
        assert_eq!(out(src), "2 1\n");
    }

    #[test]
    fn aliases_are_independent() {
        assert_eq!(out("a = [1, 2]\nb = a\nappend(&a, 3)\nprint(b, a)"), "[1, 2] [1, 2, 3]\n");
    }

    #[test]
    fn nested_update() {
        assert_eq!(
            out("foo = {xs: [1], n: \"k\"}\nappend(&foo.xs, 2)\nfoo.n = \"z\"\nprint(foo)"),
            "{xs: [1, 2], n: \"z\"}\n"
        );
    }

    #[test]
    fn closures_capture_by_value() {
        let src = "fs = []\ni = 0\nwhile i < 3 {\n  append(&fs, fn() { return i })\n  i += 1\n}\nprint(fs[0](), fs[1](), fs[2]())";
        assert_eq!(out(src), "0 1 2\n");
    }

    #[test]
    fn swap_signature_is_checked() {
        let p = parse_source("fn f(&x) { return }\nfn main() {\n  g = f\n  y = 1\n  g(y)\n}").unwrap();
        assert!(matches!(run(&p), Err(EvalError::SwapArityMismatch { .. })));
    }
}
