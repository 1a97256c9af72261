//! Random programs that alias a value and then update one of the aliases.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Debug)]
pub enum Shape {
    Int(i64),
    Arr(Vec<Shape>),
    Rec(Vec<(String, Shape)>),
}

impl Shape {
    pub fn render(&self) -> String {
        match self {
            Shape::Int(n) => n.to_string(),
            Shape::Arr(xs) => format!("[{}]", xs.iter().map(Shape::render).collect::<Vec<_>>().join(", ")),
            Shape::Rec(fs) => format!(
                "{{{}}}",
                fs.iter().map(|(k, v)| format!("{k}: {}", v.render())).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

const FIELDS: [&str; 3] = ["f", "g", "h"];

pub fn shape(rng: &mut StdRng, depth: u32) -> Shape {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return Shape::Int(rng.gen_range(-9..10));
    }
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(0..4);
        Shape::Arr((0..n).map(|_| shape(rng, depth - 1)).collect())
    } else {
        let n = rng.gen_range(1..4);
        Shape::Rec(FIELDS[..n].iter().map(|k| (k.to_string(), shape(rng, depth - 1))).collect())
    }
}

/// A container shape at the top, so there is always something to update.
fn container(rng: &mut StdRng) -> Shape {
    loop {
        let s = shape(rng, 3);
        if !matches!(s, Shape::Int(_)) {
            return s;
        }
    }
}

/// A swap-style update of the location `path` inside `a`.
fn update(rng: &mut StdRng, path: &str, at: &Shape) -> String {
    let v = shape(rng, 1).render();
    let touch = format!("touch(&a{path}, {v})");
    let choices: Vec<String> = match at {
        Shape::Int(_) => vec![format!("a{path} += {}", rng.gen_range(1..5)), touch],
        Shape::Arr(xs) if xs.is_empty() => vec![format!("append(&a{path}, {v})"), touch],
        Shape::Arr(xs) => {
            let i = rng.gen_range(0..xs.len());
            vec![
                format!("append(&a{path}, {v})"),
                format!("x = pop(&a{path})"),
                format!("a{path}[{i}] = {v}"),
                format!("set(&a{path}, {i}, {v})"),
                touch,
            ]
        }
        Shape::Rec(_) => {
            let k = FIELDS.choose(rng).unwrap();
            vec![format!("a{path}.{k} = {v}"), format!("a{path}.z = {v}"), touch]
        }
    };
    choices.choose(rng).unwrap().clone()
}

/// Walks from the root to a random location and returns its path.
fn location<'s>(rng: &mut StdRng, root: &'s Shape) -> (String, &'s Shape) {
    let mut path = String::new();
    let mut at = root;
    loop {
        if rng.gen_bool(0.4) {
            return (path, at);
        }
        match at {
            Shape::Arr(xs) if !xs.is_empty() => {
                let i = rng.gen_range(0..xs.len());
                path.push_str(&format!("[{i}]"));
                at = &xs[i];
            }
            Shape::Rec(fs) => {
                let (k, v) = fs.choose(rng).unwrap();
                path.push('.');
                path.push_str(k);
                at = v;
            }
            _ => return (path, at),
        }
    }
}

/// `b = a` followed by an update of `a`; prints whether `b` still equals
/// the original literal, then both values.
pub fn aliasing_program(rng: &mut StdRng) -> String {
    let a = container(rng);
    let (path, at) = location(rng, &a);
    let upd = update(rng, &path, at);
    let lit = a.render();
    format!("fn touch(&x, v) {{\n  x = v\n}}\n\na = {lit}\nb = a\n{upd}\nprint(b == {lit})\nprint(a)\nprint(b)\n")
}
