//! Surface syntax tree.
//!
//! The desugared core program reuses these types; it is the same tree with
//! fewer node kinds in use (see [`crate::desugar::CoreProgram`]).

use std::fmt;

/// A 1-based source position.
///
/// Spans never take part in structural equality: two trees that differ only
/// in where their nodes came from compare equal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(line: u32, column: u32) -> Self {
        Span { line, column }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub functions: Vec<FnDecl>,
}

impl Program {
    pub fn function(&self, name: &str) -> Option<&FnDecl> {
        self.functions.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FnDecl {
    pub name: String,
    pub params: Vec<Param>,
    pub body: Block,
    pub span: Span,
}

impl FnDecl {
    /// Swap flags of the parameters, in order.
    pub fn swap_signature(&self) -> Vec<bool> {
        self.params.iter().map(|p| p.swapped).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub swapped: bool,
}

pub type Block = Vec<Stmt>;

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    /// `target = value`. The first assignment to a bare name declares it.
    Assign { target: Path, value: Expr },
    /// `[a, b] = value`
    Destructure { names: Vec<String>, value: Expr },
    /// `target op= value`
    CompoundAssign { target: Path, op: BinOp, value: Expr },
    Call(Call),
    While { cond: Expr, body: Block },
    If { cond: Expr, then_block: Block, else_block: Option<Block> },
    Return(Option<Expr>),
    Break,
    Continue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn var(name: impl Into<String>, span: Span) -> Self {
        Expr::new(ExprKind::Var(name.into()), span)
    }

    pub fn lit(lit: Literal, span: Span) -> Self {
        Expr::new(ExprKind::Lit(lit), span)
    }

    /// Converts an accessor chain rooted at a variable into a path.
    pub fn to_path(&self) -> Option<Path> {
        match &self.kind {
            ExprKind::Var(name) => Some(Path::var(name.clone(), self.span)),
            ExprKind::Field(base, name) => {
                let mut path = base.to_path()?;
                path.accessors.push(Accessor::Field(name.clone()));
                Some(path)
            }
            ExprKind::Index(base, index) => {
                let mut path = base.to_path()?;
                path.accessors.push(Accessor::Index((**index).clone()));
                Some(path)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Lit(Literal),
    Var(String),
    Index(Box<Expr>, Box<Expr>),
    Field(Box<Expr>, String),
    Call(Call),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Unary(UnOp, Box<Expr>),
    Array(Vec<Expr>),
    Tuple(Vec<Expr>),
    Record(Vec<(String, Expr)>),
    Closure(Closure),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Unit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Call {
    pub callee: Box<Expr>,
    pub args: Vec<Arg>,
}

impl Call {
    /// Name of the callee when it is a bare identifier.
    pub fn callee_name(&self) -> Option<&str> {
        match &self.callee.kind {
            ExprKind::Var(name) => Some(name),
            _ => None,
        }
    }

    pub fn swap_signature(&self) -> Vec<bool> {
        self.args.iter().map(|a| matches!(a, Arg::Swap(_))).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Plain(Expr),
    Swap(Path),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Closure {
    pub params: Vec<Param>,
    pub body: Block,
}

/// An updatable location: a variable plus field/index accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub root: String,
    pub accessors: Vec<Accessor>,
    pub span: Span,
}

impl Path {
    pub fn var(root: impl Into<String>, span: Span) -> Self {
        Path { root: root.into(), accessors: Vec::new(), span }
    }

    pub fn is_plain(&self) -> bool {
        self.accessors.is_empty()
    }

    /// Rebuilds the read expression `root.a[i]...` naming this location.
    pub fn to_expr(&self) -> Expr {
        let mut expr = Expr::var(self.root.clone(), self.span);
        for acc in &self.accessors {
            let kind = match acc {
                Accessor::Field(name) => ExprKind::Field(Box::new(expr), name.clone()),
                Accessor::Index(index) => ExprKind::Index(Box::new(expr), Box::new(index.clone())),
            };
            expr = Expr::new(kind, self.span);
        }
        expr
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Accessor {
    Field(String),
    Index(Expr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::And => "and",
            BinOp::Or => "or",
        }
    }

    /// Binding power; higher binds tighter. All binary operators are left
    /// associative.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge | BinOp::Eq | BinOp::Ne => 3,
            BinOp::Add | BinOp::Sub => 4,
            BinOp::Mul | BinOp::Div => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Neg,
    Not,
}

impl UnOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Neg => "-",
            UnOp::Not => "not",
        }
    }
}

/// Precedence of prefix operators, above every binary operator.
pub const UNARY_PRECEDENCE: u8 = 6;
