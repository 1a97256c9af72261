//! Functional block form: every function is a set of blocks that take
//! parameters and end in a tail transfer to another block.

use std::fmt;

use indexmap::IndexMap;

use crate::builtin::Builtin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueId(pub u32);

impl ValueId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ValueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "%{}", self.0)
    }
}

/// Index into [`IrFunction::blocks`]. Printed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId(pub u32);

impl BlockId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "block{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Const {
    Unit,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimOp {
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
    Neg,
    Not,
}

impl PrimOp {
    pub fn arity(self) -> usize {
        match self {
            PrimOp::Neg | PrimOp::Not => 1,
            _ => 2,
        }
    }

    /// Source operator, for error messages.
    pub fn symbol(self) -> &'static str {
        match self {
            PrimOp::Add => "+",
            PrimOp::Sub | PrimOp::Neg => "-",
            PrimOp::Mul => "*",
            PrimOp::Div => "/",
            PrimOp::Lt => "<",
            PrimOp::Le => "<=",
            PrimOp::Gt => ">",
            PrimOp::Ge => ">=",
            PrimOp::Eq => "==",
            PrimOp::Ne => "!=",
            PrimOp::Not => "not",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PrimOp::Add => "add",
            PrimOp::Sub => "sub",
            PrimOp::Mul => "mul",
            PrimOp::Div => "div",
            PrimOp::Lt => "lt",
            PrimOp::Le => "le",
            PrimOp::Gt => "gt",
            PrimOp::Ge => "ge",
            PrimOp::Eq => "eq",
            PrimOp::Ne => "ne",
            PrimOp::Neg => "neg",
            PrimOp::Not => "not",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Callee {
    Builtin(Builtin),
    Function(String),
    /// A closure value.
    Value(ValueId),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Const(Const),
    Prim(PrimOp, Vec<ValueId>),
    /// `swapped[i]` marks argument `i` as passed by swap. The callee's final
    /// value for each swapped argument, in order, lands in `swap_dests`.
    Call { callee: Callee, args: Vec<ValueId>, swapped: Vec<bool>, swap_dests: Vec<ValueId> },
    MakeArray(Vec<ValueId>),
    MakeTuple(Vec<ValueId>),
    MakeRecord(Vec<(String, ValueId)>),
    /// Closure over function `func`; `captured` become its leading arguments.
    MakeClosure { func: String, captured: Vec<ValueId> },
}

impl Op {
    /// Operand ids in evaluation order.
    pub fn operands(&self) -> Vec<ValueId> {
        match self {
            Op::Const(_) => Vec::new(),
            Op::Prim(_, args) | Op::MakeArray(args) | Op::MakeTuple(args) => args.clone(),
            Op::Call { callee, args, .. } => {
                let mut out = Vec::with_capacity(args.len() + 1);
                if let Callee::Value(v) = callee {
                    out.push(*v);
                }
                out.extend(args);
                out
            }
            Op::MakeRecord(fields) => fields.iter().map(|(_, v)| *v).collect(),
            Op::MakeClosure { captured, .. } => captured.clone(),
        }
    }

    fn operands_mut(&mut self) -> Vec<&mut ValueId> {
        match self {
            Op::Const(_) => Vec::new(),
            Op::Prim(_, args) | Op::MakeArray(args) | Op::MakeTuple(args) => args.iter_mut().collect(),
            Op::Call { callee, args, .. } => {
                let mut out = Vec::new();
                if let Callee::Value(v) = callee {
                    out.push(v);
                }
                out.extend(args.iter_mut());
                out
            }
            Op::MakeRecord(fields) => fields.iter_mut().map(|(_, v)| v).collect(),
            Op::MakeClosure { captured, .. } => captured.iter_mut().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instr {
    pub dest: ValueId,
    pub op: Op,
}

impl Instr {
    /// The result id followed by any swap destinations.
    pub fn defs(&self) -> Vec<ValueId> {
        let mut out = vec![self.dest];
        if let Op::Call { swap_dests, .. } = &self.op {
            out.extend(swap_dests);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub target: BlockId,
    pub args: Vec<ValueId>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Terminator {
    Jump(Edge),
    Branch { cond: ValueId, then_edge: Edge, else_edge: Edge },
    /// Result and the final values of the swapped parameters.
    Return { value: ValueId, finals: Vec<ValueId> },
}

impl Terminator {
    pub fn edges(&self) -> Vec<&Edge> {
        match self {
            Terminator::Jump(e) => vec![e],
            Terminator::Branch { then_edge, else_edge, .. } => vec![then_edge, else_edge],
            Terminator::Return { .. } => Vec::new(),
        }
    }

    pub fn edges_mut(&mut self) -> Vec<&mut Edge> {
        match self {
            Terminator::Jump(e) => vec![e],
            Terminator::Branch { then_edge, else_edge, .. } => vec![then_edge, else_edge],
            Terminator::Return { .. } => Vec::new(),
        }
    }

    /// Every id the terminator reads, including edge arguments.
    pub fn operands(&self) -> Vec<ValueId> {
        match self {
            Terminator::Jump(e) => e.args.clone(),
            Terminator::Branch { cond, then_edge, else_edge } => {
                let mut out = vec![*cond];
                out.extend(&then_edge.args);
                out.extend(&else_edge.args);
                out
            }
            Terminator::Return { value, finals } => {
                let mut out = vec![*value];
                out.extend(finals);
                out
            }
        }
    }

    fn operands_mut(&mut self) -> Vec<&mut ValueId> {
        match self {
            Terminator::Jump(e) => e.args.iter_mut().collect(),
            Terminator::Branch { cond, then_edge, else_edge } => {
                let mut out = vec![cond];
                out.extend(then_edge.args.iter_mut());
                out.extend(else_edge.args.iter_mut());
                out
            }
            Terminator::Return { value, finals } => {
                let mut out = vec![value];
                out.extend(finals.iter_mut());
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub id: BlockId,
    pub params: Vec<ValueId>,
    pub instrs: Vec<Instr>,
    pub terminator: Terminator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrParam {
    pub value: ValueId,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrFunction {
    pub name: String,
    pub params: Vec<IrParam>,
    pub entry: BlockId,
    pub blocks: Vec<Block>,
    /// Source variable behind each value id, where there is one.
    pub value_names: Vec<Option<String>>,
}

impl IrFunction {
    pub fn block(&self, id: BlockId) -> &Block {
        &self.blocks[id.index()]
    }

    pub fn value_count(&self) -> usize {
        self.value_names.len()
    }

    pub fn swap_signature(&self) -> Vec<bool> {
        self.params.iter().map(|p| p.swapped).collect()
    }

    pub fn value_name(&self, v: ValueId) -> Option<&str> {
        self.value_names.get(v.index()).and_then(|n| n.as_deref())
    }

    /// Renumbers values densely in order of definition: block by block,
    /// parameters first, then instruction results.
    pub(crate) fn renumber_values(&mut self) {
        let mut map: Vec<Option<ValueId>> = vec![None; self.value_names.len()];
        let mut names = Vec::new();
        let mut assign = |v: ValueId, map: &mut Vec<Option<ValueId>>| {
            if map[v.index()].is_none() {
                map[v.index()] = Some(ValueId(names.len() as u32));
                names.push(self.value_names[v.index()].clone());
            }
        };
        for p in &self.params {
            assign(p.value, &mut map);
        }
        for b in &self.blocks {
            for p in &b.params {
                assign(*p, &mut map);
            }
            for i in &b.instrs {
                for d in i.defs() {
                    assign(d, &mut map);
                }
            }
        }
        let get = |v: &mut ValueId, map: &Vec<Option<ValueId>>| {
            if let Some(n) = map.get(v.index()).copied().flatten() {
                *v = n;
            }
        };
        for p in &mut self.params {
            get(&mut p.value, &map);
        }
        for b in &mut self.blocks {
            for p in &mut b.params {
                get(p, &map);
            }
            for i in &mut b.instrs {
                get(&mut i.dest, &map);
                if let Op::Call { swap_dests, .. } = &mut i.op {
                    for d in swap_dests {
                        get(d, &map);
                    }
                }
                for o in i.op.operands_mut() {
                    get(o, &map);
                }
            }
            for o in b.terminator.operands_mut() {
                get(o, &map);
            }
        }
        self.value_names = names;
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IrProgram {
    pub functions: IndexMap<String, IrFunction>,
}

impl IrProgram {
    pub fn function(&self, name: &str) -> Option<&IrFunction> {
        self.functions.get(name)
    }
}
