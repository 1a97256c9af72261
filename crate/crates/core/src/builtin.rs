//! The builtin function table shared by every stage.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `print(a, b, ...)`: space separated, newline terminated.
    Print,
    Len,
    /// `get(container, key)`, also the target of `a[i]` and `a.f` reads.
    Get,
    /// `append(&xs, x)`
    Append,
    /// `pop(&xs)` removes and returns the last element.
    Pop,
    /// `set(&container, key, value)`, the target of `a[i] = v` and `a.f = v`.
    Set,
    /// `extract(&container, key)` moves a component out, leaving unit behind.
    Extract,
    Str,
    Float,
    Int,
    /// Length assertion emitted for `[a, b] = ...`; not nameable in source.
    ExpectLen,
}

const NAMED: [Builtin; 10] = [
    Builtin::Print,
    Builtin::Len,
    Builtin::Get,
    Builtin::Append,
    Builtin::Pop,
    Builtin::Set,
    Builtin::Extract,
    Builtin::Str,
    Builtin::Float,
    Builtin::Int,
];

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Print => "print",
            Builtin::Len => "len",
            Builtin::Get => "get",
            Builtin::Append => "append",
            Builtin::Pop => "pop",
            Builtin::Set => "set",
            Builtin::Extract => "extract",
            Builtin::Str => "str",
            Builtin::Float => "float",
            Builtin::Int => "int",
            Builtin::ExpectLen => "expect_len",
        }
    }

    /// Looks up a builtin by its source-level name.
    pub fn from_name(name: &str) -> Option<Builtin> {
        NAMED.iter().copied().find(|b| b.name() == name)
    }

    /// Per-argument swap flags, or `None` for the variadic `print`.
    pub fn swap_signature(self) -> Option<&'static [bool]> {
        Some(match self {
            Builtin::Print => return None,
            Builtin::Len | Builtin::Str | Builtin::Float | Builtin::Int => &[false],
            Builtin::Get | Builtin::ExpectLen => &[false, false],
            Builtin::Append => &[true, false],
            Builtin::Pop => &[true],
            Builtin::Set => &[true, false, false],
            Builtin::Extract => &[true, false],
        })
    }

    /// Checks call-site swap flags against the signature.
    pub fn accepts(self, call_site: &[bool]) -> bool {
        match self.swap_signature() {
            None => call_site.iter().all(|s| !s),
            Some(sig) => sig == call_site,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
