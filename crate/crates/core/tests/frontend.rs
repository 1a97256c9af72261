use swapl::frontend::{parse_source, pretty_print, tokenize, FrontendError, ParseErrorKind};

fn kind(src: &str) -> ParseErrorKind {
    match parse_source(src) {
        Err(FrontendError::Parse(e)) => e.kind,
        other => panic!("expected a parse error for {src:?}, got {other:?}"),
    }
}

#[test]
fn paper_listings_parse() {
    let pow = parse_source(include_str!("../corpus/pow.sl")).unwrap();
    assert_eq!(pow.functions.iter().map(|f| f.name.as_str()).collect::<Vec<_>>(), ["pow", "main"]);
    let switch = parse_source(include_str!("../corpus/switch.sl")).unwrap();
    let f = switch.function("switch").unwrap();
    assert!(f.params.iter().all(|p| p.swapped));
}

#[test]
fn swap_markers_are_checked() {
    assert_eq!(kind("x = &y"), ParseErrorKind::MisplacedSwap);
    assert_eq!(kind("f(&(1 + 2))"), ParseErrorKind::SwapOnNonPath);
    assert_eq!(kind("a = [1]\nappend(&a, pop(&a))"), ParseErrorKind::RepeatedSwap("a".into()));
    assert!(parse_source("a = [1]\nb = [2]\nappend(&a, pop(&b))").is_ok());
}

#[test]
fn scoping_errors() {
    assert_eq!(kind("print(y)"), ParseErrorKind::UnknownVariable("y".into()));
    assert_eq!(kind("if true {\n  y = 1\n}\nprint(y)"), ParseErrorKind::MaybeUnassigned("y".into()));
    assert_eq!(kind("break"), ParseErrorKind::StrayBreak);
    assert_eq!(kind("fn f() {\n  return 1\n  print(2)\n}"), ParseErrorKind::Unreachable);
    assert_eq!(kind("fn main() {}\nprint(1)"), ParseErrorKind::MainConflict);
    assert_eq!(kind("f = len"), ParseErrorKind::BuiltinAsValue("len".into()));
}

#[test]
fn builtin_names_are_reserved() {
    assert_eq!(kind("set = 1"), ParseErrorKind::ReservedName("set".into()));
    assert_eq!(kind("fn f(extract) {\n  return extract\n}"), ParseErrorKind::ReservedName("extract".into()));
    assert_eq!(kind("fn len(x) {\n  return 0\n}"), ParseErrorKind::ReservedName("len".into()));
}

#[test]
fn errors_carry_positions() {
    let err = parse_source("x = 1\ny = (2 +\n").unwrap_err();
    assert_eq!(err.position().0, 2);
    assert!(tokenize("x = \"open").is_err());
}

#[test]
fn pretty_printer_is_a_fixpoint_on_the_corpus() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|x| x != "sl") {
            continue;
        }
        let once = pretty_print(&parse_source(&std::fs::read_to_string(&path).unwrap()).unwrap());
        let twice = pretty_print(&parse_source(&once).unwrap());
        assert_eq!(once, twice, "{}", path.display());
    }
}
