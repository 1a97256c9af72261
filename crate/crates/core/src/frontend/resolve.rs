//! Static checks run after parsing.
//!
//! A name is local to a function if it is a parameter or is assigned
//! anywhere in the body; every read of a local must be preceded by an
//! assignment on all paths. Closures see the enclosing locals that are
//! assigned at the point the closure is created.

use std::collections::HashSet;

use super::ast::*;
use super::error::{FrontendError, ParseErrorKind};
use super::parser::error_at;
use super::visit::declared_vars;
use crate::builtin::Builtin;

type RResult<T> = Result<T, FrontendError>;

pub fn resolve(program: &Program) -> RResult<()> {
    let mut functions = HashSet::new();
    for f in &program.functions {
        if Builtin::from_name(&f.name).is_some() {
            return Err(error_at(f.span, ParseErrorKind::ReservedName(f.name.clone())));
        }
        if !functions.insert(f.name.clone()) {
            return Err(error_at(f.span, ParseErrorKind::DuplicateFunction(f.name.clone())));
        }
    }
    let checker = Checker { functions: &functions };
    for f in &program.functions {
        checker.params(&f.params, f.span)?;
        let mut locals: HashSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
        locals.extend(declared_vars(&f.body));
        let mut defined: HashSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
        checker.block(&f.body, &locals, &mut defined, 0)?;
    }
    Ok(())
}

/// Builtin names cannot be rebound, so generated calls such as `set` and
/// `extract` always mean the builtin.
fn reserved(name: &str, span: Span) -> RResult<()> {
    if Builtin::from_name(name).is_some() {
        return Err(error_at(span, ParseErrorKind::ReservedName(name.to_string())));
    }
    Ok(())
}

struct Checker<'a> {
    functions: &'a HashSet<String>,
}

impl Checker<'_> {
    fn params(&self, params: &[Param], span: Span) -> RResult<()> {
        let mut seen = HashSet::new();
        for p in params {
            reserved(&p.name, span)?;
            if !seen.insert(&p.name) {
                return Err(error_at(span, ParseErrorKind::DuplicateParam(p.name.clone())));
            }
        }
        Ok(())
    }

    /// Returns true when control cannot fall off the end of the block.
    fn block(
        &self,
        block: &Block,
        locals: &HashSet<String>,
        defined: &mut HashSet<String>,
        loops: usize,
    ) -> RResult<bool> {
        for (i, stmt) in block.iter().enumerate() {
            if self.stmt(stmt, locals, defined, loops)? {
                if let Some(next) = block.get(i + 1) {
                    return Err(error_at(next.span, ParseErrorKind::Unreachable));
                }
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn stmt(
        &self,
        stmt: &Stmt,
        locals: &HashSet<String>,
        defined: &mut HashSet<String>,
        loops: usize,
    ) -> RResult<bool> {
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                reserved(&target.root, stmt.span)?;
                if !target.is_plain() {
                    self.path(target, locals, defined)?;
                }
                self.expr(value, locals, defined)?;
                defined.insert(target.root.clone());
            }
            StmtKind::Destructure { names, value } => {
                self.expr(value, locals, defined)?;
                let mut seen = HashSet::new();
                for n in names {
                    reserved(n, stmt.span)?;
                    if !seen.insert(n) {
                        return Err(error_at(stmt.span, ParseErrorKind::DuplicateBinding(n.clone())));
                    }
                }
                defined.extend(names.iter().cloned());
            }
            StmtKind::CompoundAssign { target, value, .. } => {
                self.path(target, locals, defined)?;
                self.expr(value, locals, defined)?;
            }
            StmtKind::Call(call) => self.call(call, stmt.span, locals, defined)?,
            StmtKind::While { cond, body } => {
                self.expr(cond, locals, defined)?;
                let mut inner = defined.clone();
                self.block(body, locals, &mut inner, loops + 1)?;
            }
            StmtKind::If { cond, then_block, else_block } => {
                self.expr(cond, locals, defined)?;
                let mut then_defs = defined.clone();
                let then_exits = self.block(then_block, locals, &mut then_defs, loops)?;
                let mut else_defs = defined.clone();
                let else_exits = match else_block {
                    Some(b) => self.block(b, locals, &mut else_defs, loops)?,
                    None => false,
                };
                match (then_exits, else_exits) {
                    (true, true) => return Ok(true),
                    (true, false) => *defined = else_defs,
                    (false, true) => *defined = then_defs,
                    (false, false) => {
                        then_defs.retain(|n| else_defs.contains(n));
                        *defined = then_defs;
                    }
                }
            }
            StmtKind::Return(value) => {
                if let Some(e) = value {
                    self.expr(e, locals, defined)?;
                }
                return Ok(true);
            }
            StmtKind::Break | StmtKind::Continue => {
                if loops == 0 {
                    let kind = if stmt.kind == StmtKind::Break {
                        ParseErrorKind::StrayBreak
                    } else {
                        ParseErrorKind::StrayContinue
                    };
                    return Err(error_at(stmt.span, kind));
                }
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Path roots must be assigned locals.
    fn path(&self, path: &Path, locals: &HashSet<String>, defined: &HashSet<String>) -> RResult<()> {
        if !locals.contains(&path.root) {
            return Err(error_at(path.span, ParseErrorKind::UnknownVariable(path.root.clone())));
        }
        if !defined.contains(&path.root) {
            return Err(error_at(path.span, ParseErrorKind::MaybeUnassigned(path.root.clone())));
        }
        for acc in &path.accessors {
            if let Accessor::Index(e) = acc {
                self.expr(e, locals, defined)?;
            }
        }
        Ok(())
    }

    fn name(&self, name: &str, span: Span, locals: &HashSet<String>, defined: &HashSet<String>, callee: bool) -> RResult<()> {
        if locals.contains(name) {
            if defined.contains(name) {
                return Ok(());
            }
            return Err(error_at(span, ParseErrorKind::MaybeUnassigned(name.to_string())));
        }
        if self.functions.contains(name) {
            return Ok(());
        }
        if Builtin::from_name(name).is_some() {
            if callee {
                return Ok(());
            }
            return Err(error_at(span, ParseErrorKind::BuiltinAsValue(name.to_string())));
        }
        Err(error_at(span, ParseErrorKind::UnknownVariable(name.to_string())))
    }

    fn call(&self, call: &Call, span: Span, locals: &HashSet<String>, defined: &HashSet<String>) -> RResult<()> {
        match &call.callee.kind {
            ExprKind::Var(name) => self.name(name, call.callee.span, locals, defined, true)?,
            _ => self.expr(&call.callee, locals, defined)?,
        }
        for arg in &call.args {
            match arg {
                Arg::Plain(e) => self.expr(e, locals, defined)?,
                Arg::Swap(path) => self.path(path, locals, defined)?,
            }
        }
        let mut roots = Vec::new();
        swap_roots(call, &mut roots);
        let mut seen = HashSet::new();
        for root in roots {
            if !seen.insert(root) {
                return Err(error_at(span, ParseErrorKind::RepeatedSwap(root.to_string())));
            }
        }
        Ok(())
    }

    fn expr(&self, expr: &Expr, locals: &HashSet<String>, defined: &HashSet<String>) -> RResult<()> {
        match &expr.kind {
            ExprKind::Lit(_) => Ok(()),
            ExprKind::Var(name) => self.name(name, expr.span, locals, defined, false),
            ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => {
                self.expr(a, locals, defined)?;
                self.expr(b, locals, defined)
            }
            ExprKind::Field(a, _) | ExprKind::Unary(_, a) => self.expr(a, locals, defined),
            ExprKind::Call(call) => self.call(call, expr.span, locals, defined),
            ExprKind::Array(items) | ExprKind::Tuple(items) => {
                items.iter().try_for_each(|e| self.expr(e, locals, defined))
            }
            ExprKind::Record(fields) => fields.iter().try_for_each(|(_, e)| self.expr(e, locals, defined)),
            ExprKind::Closure(closure) => {
                self.params(&closure.params, expr.span)?;
                let mut inner_locals = locals.clone();
                inner_locals.extend(closure.params.iter().map(|p| p.name.clone()));
                inner_locals.extend(declared_vars(&closure.body));
                let mut inner_defined = defined.clone();
                inner_defined.extend(closure.params.iter().map(|p| p.name.clone()));
                self.block(&closure.body, &inner_locals, &mut inner_defined, 0)?;
                Ok(())
            }
        }
    }
}

/// Swap roots of a call and of every call nested in its arguments (closure
/// bodies excluded). Each root may appear once: the arguments of one call
/// cannot both pass a variable by swap and change it.
fn swap_roots<'c>(call: &'c Call, out: &mut Vec<&'c str>) {
    fn in_expr<'c>(e: &'c Expr, out: &mut Vec<&'c str>) {
        match &e.kind {
            ExprKind::Lit(_) | ExprKind::Var(_) | ExprKind::Closure(_) => {}
            ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => {
                in_expr(a, out);
                in_expr(b, out);
            }
            ExprKind::Field(a, _) | ExprKind::Unary(_, a) => in_expr(a, out),
            ExprKind::Call(c) => swap_roots(c, out),
            ExprKind::Array(xs) | ExprKind::Tuple(xs) => xs.iter().for_each(|x| in_expr(x, out)),
            ExprKind::Record(fs) => fs.iter().for_each(|(_, x)| in_expr(x, out)),
        }
    }
    in_expr(&call.callee, out);
    for arg in &call.args {
        match arg {
            Arg::Plain(e) => in_expr(e, out),
            Arg::Swap(path) => {
                out.push(&path.root);
                for acc in &path.accessors {
                    if let Accessor::Index(e) = acc {
                        in_expr(e, out);
                    }
                }
            }
        }
    }
}
