use swapl::desugar::{desugar, is_core};
use swapl::frontend::{parse_source, pretty_print};
use swapl::oracle;

fn core_text(src: &str) -> String {
    pretty_print(desugar(&parse_source(src).unwrap()).unwrap().program())
}

#[test]
fn sugared_nested_append_decomposes_and_rebuilds() {
    let text = core_text("foo = {xs: []}\nappend(&foo.xs, 1)");
    let body: Vec<&str> = text.lines().map(str::trim).collect();
    let at = body.iter().position(|l| l.starts_with("$t0 = extract(&foo")).unwrap();
    assert_eq!(body[at + 1], "append(&$t0, 1)");
    assert_eq!(body[at + 2], "set(&foo, \"xs\", $t0)");
}

#[test]
fn compound_assignment_becomes_plain_assignment() {
    let text = core_text("fn pow(x, n) {\n  r = 1\n  r *= x\n  return r\n}");
    assert!(text.contains("r = r * x"), "{text}");
}

#[test]
fn corpus_desugars_to_core_and_keeps_its_meaning() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|x| x != "sl") {
            continue;
        }
        let surface = parse_source(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let core = desugar(&surface).unwrap();
        is_core(core.program()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = desugar(core.program()).unwrap();
        assert_eq!(pretty_print(again.program()), pretty_print(core.program()), "{}", path.display());
        let a = oracle::run(&surface).unwrap().output;
        let b = oracle::run(core.program()).unwrap().output;
        assert_eq!(a, b, "{}", path.display());
    }
}

#[test]
fn surface_forms_are_not_core() {
    for src in ["x = 1\nx += 1", "a = [1]\na[0] = 2", "r = {f: [1]}\nappend(&r.f, 2)"] {
        assert!(is_core(&parse_source(src).unwrap()).is_err(), "{src}");
    }
}
