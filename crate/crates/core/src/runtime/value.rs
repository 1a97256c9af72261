//! Runtime values. Aggregates live in reference-counted cells that are
//! updated in place when uniquely held and copied otherwise.

use std::cell::Cell;
use std::fmt::Write;
use std::ops::Deref;
use std::rc::Rc;

use indexmap::IndexMap;

use super::error::EvalError;
use super::stats::ReuseStats;

thread_local! {
    static LIVE_CELLS: Cell<i64> = const { Cell::new(0) };
}

/// Number of aggregate cells currently alive on this thread.
pub fn live_cells() -> i64 {
    LIVE_CELLS.with(Cell::get)
}

/// An aggregate cell. Creating and dropping cells is tracked by
/// [`live_cells`].
#[derive(Debug)]
pub struct Node<T> {
    data: T,
}

impl<T> Node<T> {
    pub fn new(data: T) -> Self {
        LIVE_CELLS.with(|c| c.set(c.get() + 1));
        Node { data }
    }

    pub fn into_inner(mut self) -> T
    where
        T: Default,
    {
        std::mem::take(&mut self.data)
    }
}

impl<T> Drop for Node<T> {
    fn drop(&mut self) {
        LIVE_CELLS.with(|c| c.set(c.get() - 1));
    }
}

impl<T> Deref for Node<T> {
    type Target = T;

    fn deref(&self) -> &T {
        &self.data
    }
}

pub type Cellref<T> = Rc<Node<T>>;

#[derive(Debug, Clone, Default)]
pub struct ClosureData {
    pub func: Rc<str>,
    pub captured: Vec<Value>,
}

#[derive(Debug, Clone, Default)]
pub enum Value {
    #[default]
    Unit,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(Rc<str>),
    Tuple(Cellref<Vec<Value>>),
    Array(Cellref<Vec<Value>>),
    Record(Cellref<IndexMap<String, Value>>),
    Closure(Cellref<ClosureData>),
}

/// Fresh cell, counted as an allocation.
pub fn alloc<T>(data: T, stats: &mut ReuseStats) -> Cellref<T> {
    stats.allocations += 1;
    Rc::new(Node::new(data))
}

/// Mutable access to a cell's contents for an update. A cell held only by
/// the caller is updated in place when reuse is enabled; otherwise its
/// contents are copied into a fresh cell first.
pub fn make_mut<'c, T: Clone>(cell: &'c mut Cellref<T>, reuse: bool, stats: &mut ReuseStats) -> &'c mut T {
    if reuse && Rc::strong_count(cell) == 1 && Rc::weak_count(cell) == 0 {
        stats.in_place += 1;
    } else {
        stats.copies += 1;
        *cell = alloc(cell.data.clone(), stats);
    }
    &mut Rc::get_mut(cell).expect("cell is unique after copy").data
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Unit => "unit",
            Value::Bool(_) => "bool",
            Value::Int(_) => "int",
            Value::Float(_) => "float",
            Value::Str(_) => "string",
            Value::Tuple(_) => "tuple",
            Value::Array(_) => "array",
            Value::Record(_) => "record",
            Value::Closure(_) => "closure",
        }
    }

    pub fn str(s: &str) -> Value {
        Value::Str(Rc::from(s))
    }

    /// Text as `print` shows it: strings unquoted at top level.
    pub fn render(&self) -> String {
        match self {
            Value::Str(s) => s.to_string(),
            other => {
                let mut out = String::new();
                other.render_nested(&mut out);
                out
            }
        }
    }

    fn render_nested(&self, out: &mut String) {
        fn items(out: &mut String, xs: &[Value]) {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                x.render_nested(out);
            }
        }
        match self {
            Value::Unit => out.push_str("()"),
            Value::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Value::Int(n) => {
                let _ = write!(out, "{n}");
            }
            Value::Float(x) => {
                let _ = write!(out, "{x:?}");
            }
            Value::Str(s) => crate::frontend::write_quoted(out, s),
            Value::Tuple(xs) => {
                out.push('(');
                items(out, xs);
                if xs.len() == 1 {
                    out.push(',');
                }
                out.push(')');
            }
            Value::Array(xs) => {
                out.push('[');
                items(out, xs);
                out.push(']');
            }
            Value::Record(fields) => {
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
            Value::Closure(c) => {
                if c.func.contains('$') {
                    out.push_str("<closure>");
                } else {
                    let _ = write!(out, "<fn {}>", c.func);
                }
            }
        }
    }

    /// Structural equality; numbers compare across int and float, record
    /// fields in any order.
    pub fn deep_eq(&self, other: &Value) -> Result<bool, EvalError> {
        use Value::*;
        if matches!(self, Closure(_)) || matches!(other, Closure(_)) {
            return Err(EvalError::type_error("closures cannot be compared"));
        }
        Ok(match (self, other) {
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
                for (x, y) in xs.iter().zip(ys.iter()) {
                    if !x.deep_eq(y)? {
                        return Ok(false);
                    }
                }
                true
            }
            (Record(xs), Record(ys)) => {
                if xs.len() != ys.len() {
                    return Ok(false);
                }
                for (k, x) in xs.iter() {
                    match ys.get(k) {
                        Some(y) if x.deep_eq(y)? => {}
                        _ => return Ok(false),
                    }
                }
                true
            }
            _ => false,
        })
    }

    /// Reference count of the value's cell, or `None` for scalars.
    pub fn cell_count(&self) -> Option<usize> {
        match self {
            Value::Tuple(c) | Value::Array(c) => Some(Rc::strong_count(c)),
            Value::Record(c) => Some(Rc::strong_count(c)),
            Value::Closure(c) => Some(Rc::strong_count(c)),
            _ => None,
        }
    }
}
