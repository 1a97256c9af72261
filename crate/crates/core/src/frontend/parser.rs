use super::ast::*;
use super::error::{FrontendError, ParseError, ParseErrorKind};
use super::lexer::{Keyword, Punct, Token, TokenKind};

type PResult<T> = Result<T, FrontendError>;

/// Parses a token stream and runs the resolution checks (duplicate names,
/// stray `break`/`continue`, definite assignment).
///
/// Statements outside any function form the body of an implicit `main`.
pub fn parse(tokens: &[Token]) -> PResult<Program> {
    let program = parse_syntax(tokens)?;
    super::resolve::resolve(&program)?;
    Ok(program)
}

/// Syntax only; no name resolution.
pub fn parse_syntax(tokens: &[Token]) -> PResult<Program> {
    Parser { toks: tokens, pos: 0 }.program()
}

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
}

pub(crate) fn error_at(span: Span, kind: ParseErrorKind) -> FrontendError {
    FrontendError::Parse(ParseError { line: span.line, column: span.column, kind })
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&'t Token> {
        self.toks.get(self.pos + n)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn span(&self) -> Span {
        match self.peek().or_else(|| self.toks.last()) {
            Some(t) => Span::new(t.line, t.column),
            None => Span::new(1, 1),
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(error_at(self.span(), ParseErrorKind::Syntax(msg.into())))
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        }
    }

    fn at_punct(&self, p: Punct) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn at_keyword(&self, k: Keyword) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(k))
    }

    fn eat_punct(&mut self, p: Punct) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: Punct) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.syntax(format!("expected `{}`, found {}", p.as_str(), self.found()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.pos += 1;
                Ok(t.lexeme.clone())
            }
            _ => self.syntax(format!("expected a name, found {}", self.found())),
        }
    }

    fn skip_newlines(&mut self) {
        while self.peek().is_some_and(|t| t.kind == TokenKind::Newline) {
            self.pos += 1;
        }
    }

    fn skip_separators(&mut self) {
        while self
            .peek()
            .is_some_and(|t| t.kind == TokenKind::Newline || t.is_punct(Punct::Semi))
        {
            self.pos += 1;
        }
    }

    fn at_statement_end(&self) -> bool {
        match self.peek() {
            None => true,
            Some(t) => {
                t.kind == TokenKind::Newline || t.is_punct(Punct::Semi) || t.is_punct(Punct::RBrace)
            }
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut functions = Vec::new();
        let mut top = Vec::new();
        loop {
            self.skip_separators();
            if self.peek().is_none() {
                break;
            }
            let is_decl = self.at_keyword(Keyword::Fn)
                && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Ident);
            if is_decl {
                functions.push(self.fn_decl()?);
            } else {
                top.push(self.stmt()?);
            }
            if !self.at_statement_end() {
                return self.syntax(format!("expected end of statement, found {}", self.found()));
            }
        }
        if let Some(first) = top.first() {
            if functions.iter().any(|f: &FnDecl| f.name == "main") {
                return Err(error_at(first.span, ParseErrorKind::MainConflict));
            }
            let span = first.span;
            functions.push(FnDecl { name: "main".into(), params: Vec::new(), body: top, span });
        }
        Ok(Program { functions })
    }

    fn fn_decl(&mut self) -> PResult<FnDecl> {
        let span = self.span();
        self.bump();
        let name = self.ident()?;
        let params = self.params()?;
        let body = self.block()?;
        Ok(FnDecl { name, params, body, span })
    }

    fn params(&mut self) -> PResult<Vec<Param>> {
        self.expect_punct(Punct::LParen)?;
        let mut params = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat_punct(Punct::RParen) {
                return Ok(params);
            }
            let swapped = self.eat_punct(Punct::Amp);
            params.push(Param { name: self.ident()?, swapped });
            self.skip_newlines();
            if !self.eat_punct(Punct::Comma) {
                self.skip_newlines();
                self.expect_punct(Punct::RParen)?;
                return Ok(params);
            }
        }
    }

    fn block(&mut self) -> PResult<Block> {
        self.expect_punct(Punct::LBrace)?;
        let mut stmts = Vec::new();
        loop {
            self.skip_separators();
            if self.eat_punct(Punct::RBrace) {
                return Ok(stmts);
            }
            if self.peek().is_none() {
                return self.syntax("unclosed block, expected `}`");
            }
            stmts.push(self.stmt()?);
            if !self.at_statement_end() {
                return self.syntax(format!("expected end of statement, found {}", self.found()));
            }
        }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let span = self.span();
        let tok = match self.peek() {
            Some(t) => t,
            None => return self.syntax("expected a statement"),
        };
        let kind = match tok.kind {
            TokenKind::Keyword(Keyword::While) => {
                self.bump();
                let cond = self.expr()?;
                let body = self.block()?;
                StmtKind::While { cond, body }
            }
            TokenKind::Keyword(Keyword::If) => return self.if_stmt(),
            TokenKind::Keyword(Keyword::Return) => {
                self.bump();
                if self.at_statement_end() {
                    StmtKind::Return(None)
                } else {
                    StmtKind::Return(Some(self.expr()?))
                }
            }
            TokenKind::Keyword(Keyword::Break) => {
                self.bump();
                StmtKind::Break
            }
            TokenKind::Keyword(Keyword::Continue) => {
                self.bump();
                StmtKind::Continue
            }
            _ => self.expr_stmt()?,
        };
        Ok(Stmt { kind, span })
    }

    fn if_stmt(&mut self) -> PResult<Stmt> {
        let span = self.span();
        self.bump();
        let cond = self.expr()?;
        let then_block = self.block()?;
        // `else` may sit on the line after the closing brace.
        let save = self.pos;
        self.skip_newlines();
        let else_block = if self.at_keyword(Keyword::Else) {
            self.bump();
            if self.at_keyword(Keyword::If) {
                Some(vec![self.if_stmt()?])
            } else {
                Some(self.block()?)
            }
        } else {
            self.pos = save;
            None
        };
        Ok(Stmt { kind: StmtKind::If { cond, then_block, else_block }, span })
    }

    fn expr_stmt(&mut self) -> PResult<StmtKind> {
        let lhs = self.expr()?;
        let compound = match self.peek().map(|t| t.kind) {
            Some(TokenKind::Punct(Punct::Assign)) => {
                self.bump();
                let value = self.expr()?;
                if let ExprKind::Array(items) = &lhs.kind {
                    let mut names = Vec::with_capacity(items.len());
                    for item in items {
                        match &item.kind {
                            ExprKind::Var(n) => names.push(n.clone()),
                            _ => {
                                return Err(error_at(
                                    item.span,
                                    ParseErrorKind::Syntax(
                                        "destructuring assignment takes a list of variable names".into(),
                                    ),
                                ))
                            }
                        }
                    }
                    if names.is_empty() {
                        return Err(error_at(
                            lhs.span,
                            ParseErrorKind::Syntax("empty destructuring assignment".into()),
                        ));
                    }
                    return Ok(StmtKind::Destructure { names, value });
                }
                let target = self.assign_target(&lhs)?;
                return Ok(StmtKind::Assign { target, value });
            }
            Some(TokenKind::Punct(Punct::PlusAssign)) => BinOp::Add,
            Some(TokenKind::Punct(Punct::MinusAssign)) => BinOp::Sub,
            Some(TokenKind::Punct(Punct::StarAssign)) => BinOp::Mul,
            Some(TokenKind::Punct(Punct::SlashAssign)) => BinOp::Div,
            _ => {
                return match lhs.kind {
                    ExprKind::Call(call) => Ok(StmtKind::Call(call)),
                    _ => Err(error_at(
                        lhs.span,
                        ParseErrorKind::Syntax("only calls can be used as statements".into()),
                    )),
                }
            }
        };
        self.bump();
        let value = self.expr()?;
        let target = self.assign_target(&lhs)?;
        Ok(StmtKind::CompoundAssign { target, op: compound, value })
    }

    fn assign_target(&self, lhs: &Expr) -> PResult<Path> {
        lhs.to_path().ok_or_else(|| {
            error_at(lhs.span, ParseErrorKind::Syntax("invalid assignment target".into()))
        })
    }

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        self.expr_bp(0)
    }

    fn peek_binop(&self) -> Option<BinOp> {
        Some(match self.peek()?.kind {
            TokenKind::Punct(Punct::Plus) => BinOp::Add,
            TokenKind::Punct(Punct::Minus) => BinOp::Sub,
            TokenKind::Punct(Punct::Star) => BinOp::Mul,
            TokenKind::Punct(Punct::Slash) => BinOp::Div,
            TokenKind::Punct(Punct::Lt) => BinOp::Lt,
            TokenKind::Punct(Punct::Le) => BinOp::Le,
            TokenKind::Punct(Punct::Gt) => BinOp::Gt,
            TokenKind::Punct(Punct::Ge) => BinOp::Ge,
            TokenKind::Punct(Punct::EqEq) => BinOp::Eq,
            TokenKind::Punct(Punct::NotEq) => BinOp::Ne,
            TokenKind::Keyword(Keyword::And) => BinOp::And,
            TokenKind::Keyword(Keyword::Or) => BinOp::Or,
            _ => return None,
        })
    }

    fn expr_bp(&mut self, min: u8) -> PResult<Expr> {
        let mut lhs = self.prefix()?;
        while let Some(op) = self.peek_binop() {
            let prec = op.precedence();
            if prec <= min {
                break;
            }
            self.bump();
            self.skip_newlines();
            let rhs = self.expr_bp(prec)?;
            let span = lhs.span;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn int_literal(&self, text: &str, span: Span) -> PResult<i64> {
        text.parse::<i64>().map_err(|_| {
            error_at(span, ParseErrorKind::Syntax(format!("integer literal `{text}` out of range")))
        })
    }

    fn prefix(&mut self) -> PResult<Expr> {
        let span = self.span();
        let Some(tok) = self.peek() else {
            return self.syntax("expected an expression, found end of input");
        };
        match tok.kind {
            TokenKind::Punct(Punct::Minus) => {
                self.bump();
                // Negative numeric literals fold, so `-5` and `-(5)` are both Int(-5).
                if let Some(next) = self.peek() {
                    match next.kind {
                        TokenKind::Int => {
                            self.bump();
                            let n = self.int_literal(&format!("-{}", next.lexeme), span)?;
                            return self.postfix(Expr::lit(Literal::Int(n), span));
                        }
                        TokenKind::Float => {
                            self.bump();
                            let x: f64 = next.lexeme.parse().unwrap_or(f64::NAN);
                            return self.postfix(Expr::lit(Literal::Float(-x), span));
                        }
                        _ => {}
                    }
                }
                let operand = self.expr_bp(UNARY_PRECEDENCE)?;
                Ok(match operand.kind {
                    ExprKind::Lit(Literal::Int(n)) => Expr::lit(Literal::Int(n.wrapping_neg()), span),
                    ExprKind::Lit(Literal::Float(x)) => Expr::lit(Literal::Float(-x), span),
                    kind => Expr::new(
                        ExprKind::Unary(UnOp::Neg, Box::new(Expr::new(kind, operand.span))),
                        span,
                    ),
                })
            }
            TokenKind::Keyword(Keyword::Not) => {
                self.bump();
                let operand = self.expr_bp(UNARY_PRECEDENCE)?;
                Ok(Expr::new(ExprKind::Unary(UnOp::Not, Box::new(operand)), span))
            }
            _ => {
                let primary = self.primary()?;
                self.postfix(primary)
            }
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let span = self.span();
        let tok = self.bump().expect("caller checked for a token");
        let lit = |l| Ok(Expr::lit(l, span));
        match tok.kind {
            TokenKind::Int => lit(Literal::Int(self.int_literal(&tok.lexeme, span)?)),
            TokenKind::Float => match tok.lexeme.parse::<f64>() {
                Ok(x) => lit(Literal::Float(x)),
                Err(_) => Err(error_at(span, ParseErrorKind::Syntax("malformed float literal".into()))),
            },
            TokenKind::Str => lit(Literal::Str(unescape(&tok.lexeme))),
            TokenKind::Keyword(Keyword::True) => lit(Literal::Bool(true)),
            TokenKind::Keyword(Keyword::False) => lit(Literal::Bool(false)),
            TokenKind::Ident => Ok(Expr::var(tok.lexeme.clone(), span)),
            TokenKind::Punct(Punct::LParen) => {
                self.skip_newlines();
                if self.eat_punct(Punct::RParen) {
                    return lit(Literal::Unit);
                }
                let first = self.expr()?;
                self.skip_newlines();
                if self.eat_punct(Punct::RParen) {
                    return Ok(first);
                }
                self.expect_punct(Punct::Comma)?;
                let mut items = vec![first];
                items.extend(self.list(Punct::RParen)?);
                Ok(Expr::new(ExprKind::Tuple(items), span))
            }
            TokenKind::Punct(Punct::LBracket) => {
                let items = self.list(Punct::RBracket)?;
                Ok(Expr::new(ExprKind::Array(items), span))
            }
            TokenKind::Punct(Punct::LBrace) => self.record(span),
            TokenKind::Keyword(Keyword::Fn) => {
                let params = self.params()?;
                let body = self.block()?;
                Ok(Expr::new(ExprKind::Closure(Closure { params, body }), span))
            }
            TokenKind::Punct(Punct::Amp) => Err(error_at(span, ParseErrorKind::MisplacedSwap)),
            _ => {
                self.pos -= 1;
                self.syntax(format!("expected an expression, found {}", self.found()))
            }
        }
    }

    /// Comma separated expressions up to `close`; a trailing comma is allowed.
    fn list(&mut self, close: Punct) -> PResult<Vec<Expr>> {
        let mut items = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat_punct(close) {
                return Ok(items);
            }
            items.push(self.expr()?);
            self.skip_newlines();
            if !self.eat_punct(Punct::Comma) {
                self.expect_punct(close)?;
                return Ok(items);
            }
        }
    }

    fn record(&mut self, span: Span) -> PResult<Expr> {
        let mut fields: Vec<(String, Expr)> = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat_punct(Punct::RBrace) {
                break;
            }
            let key_span = self.span();
            let key = self.ident()?;
            if fields.iter().any(|(k, _)| *k == key) {
                return Err(error_at(key_span, ParseErrorKind::DuplicateField(key)));
            }
            self.expect_punct(Punct::Colon)?;
            self.skip_newlines();
            let value = self.expr()?;
            fields.push((key, value));
            self.skip_newlines();
            if !self.eat_punct(Punct::Comma) {
                self.expect_punct(Punct::RBrace)?;
                break;
            }
        }
        Ok(Expr::new(ExprKind::Record(fields), span))
    }

    fn postfix(&mut self, mut expr: Expr) -> PResult<Expr> {
        loop {
            let span = expr.span;
            if self.eat_punct(Punct::LParen) {
                let args = self.call_args()?;
                expr = Expr::new(ExprKind::Call(Call { callee: Box::new(expr), args }), span);
            } else if self.eat_punct(Punct::LBracket) {
                self.skip_newlines();
                let index = self.expr()?;
                self.skip_newlines();
                self.expect_punct(Punct::RBracket)?;
                expr = Expr::new(ExprKind::Index(Box::new(expr), Box::new(index)), span);
            } else if self.eat_punct(Punct::Dot) {
                let name = self.ident()?;
                expr = Expr::new(ExprKind::Field(Box::new(expr), name), span);
            } else {
                return Ok(expr);
            }
        }
    }

    fn call_args(&mut self) -> PResult<Vec<Arg>> {
        let mut args = Vec::new();
        loop {
            self.skip_newlines();
            if self.eat_punct(Punct::RParen) {
                return Ok(args);
            }
            if self.at_punct(Punct::Amp) {
                let amp = self.span();
                self.bump();
                if self.peek().is_none() {
                    return Err(error_at(amp, ParseErrorKind::SwapOnNonPath));
                }
                let operand = self.prefix()?;
                self.skip_newlines();
                let path = operand.to_path().filter(|_| {
                    self.at_punct(Punct::Comma) || self.at_punct(Punct::RParen)
                });
                match path {
                    Some(path) => args.push(Arg::Swap(path)),
                    None => return Err(error_at(amp, ParseErrorKind::SwapOnNonPath)),
                }
            } else {
                args.push(Arg::Plain(self.expr()?));
            }
            self.skip_newlines();
            if !self.eat_punct(Punct::Comma) {
                self.expect_punct(Punct::RParen)?;
                return Ok(args);
            }
        }
    }
}

fn unescape(lexeme: &str) -> String {
    let inner = &lexeme[1..lexeme.len() - 1];
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some('t') => out.push('\t'),
                Some(other) => out.push(other),
                None => {}
            }
        } else {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::lexer::tokenize;

    fn parse_src(src: &str) -> PResult<Program> {
        parse(&tokenize(src)?)
    }

    fn kind_of(src: &str) -> ParseErrorKind {
        parse_src(src).unwrap_err().parse_kind().cloned().expect("parse error")
    }

    #[test]
    fn switch_signature() {
        let p = parse_src("fn switch(&x, &y) {\n  [x, y] = [y, x]\n  return\n}\n").unwrap();
        let f = &p.functions[0];
        assert_eq!(f.name, "switch");
        assert_eq!(
            f.params,
            vec![Param { name: "x".into(), swapped: true }, Param { name: "y".into(), swapped: true }]
        );
        assert!(matches!(f.body[0].kind, StmtKind::Destructure { .. }));
        assert_eq!(f.body[1].kind, StmtKind::Return(None));
    }

    #[test]
    fn minimal_function() {
        let p = parse_src("fn f() { return 1 }").unwrap();
        assert_eq!(p.functions.len(), 1);
        assert_eq!(
            p.functions[0].body[0].kind,
            StmtKind::Return(Some(Expr::lit(Literal::Int(1), Span::default())))
        );
    }

    #[test]
    fn swap_call_arguments() {
        let p = parse_src("a = 1\nb = 2\nc = 3\nfn foo(&x, y, &z) { return y }\nresult = foo(&a, b, &c)")
            .unwrap();
        let main = p.function("main").unwrap();
        let StmtKind::Assign { target, value } = &main.body[3].kind else { panic!() };
        assert_eq!(target.root, "result");
        let ExprKind::Call(call) = &value.kind else { panic!() };
        assert_eq!(call.callee_name(), Some("foo"));
        assert_eq!(call.swap_signature(), vec![true, false, true]);
    }

    #[test]
    fn swap_on_expression_is_rejected() {
        assert_eq!(kind_of("fn foo(&x) { return }\na = 1\nfoo(&1+2)"), ParseErrorKind::SwapOnNonPath);
        assert_eq!(kind_of("fn foo(&x) { return }\na = 1\nfoo(&a+2)"), ParseErrorKind::SwapOnNonPath);
        assert_eq!(kind_of("a = [1]\nb = &a"), ParseErrorKind::MisplacedSwap);
    }

    #[test]
    fn nested_paths_are_swappable() {
        let p = parse_src("foo = {xs: [1]}\nappend(&foo.xs, 2)").unwrap();
        let StmtKind::Call(call) = &p.functions[0].body[1].kind else { panic!() };
        let Arg::Swap(path) = &call.args[0] else { panic!() };
        assert_eq!(path.root, "foo");
        assert_eq!(path.accessors, vec![Accessor::Field("xs".into())]);
    }

    #[test]
    fn stray_loop_control() {
        assert_eq!(kind_of("fn f() { break }"), ParseErrorKind::StrayBreak);
        assert_eq!(kind_of("fn f() { if true { continue } }"), ParseErrorKind::StrayContinue);
        assert_eq!(
            kind_of("fn f() { while true { g = fn() { break } } }"),
            ParseErrorKind::StrayBreak
        );
    }

    #[test]
    fn precedence() {
        let p = parse_src("x = 1 + 2 * 3 < 7 and not false").unwrap();
        let StmtKind::Assign { value, .. } = &p.functions[0].body[0].kind else { panic!() };
        let ExprKind::Binary(BinOp::And, lhs, _) = &value.kind else { panic!("{value:?}") };
        let ExprKind::Binary(BinOp::Lt, sum, _) = &lhs.kind else { panic!() };
        let ExprKind::Binary(BinOp::Add, _, product) = &sum.kind else { panic!() };
        assert!(matches!(product.kind, ExprKind::Binary(BinOp::Mul, _, _)));
    }

    #[test]
    fn subtraction_is_left_associative() {
        let p = parse_src("x = 10 - 3 - 2").unwrap();
        let StmtKind::Assign { value, .. } = &p.functions[0].body[0].kind else { panic!() };
        let ExprKind::Binary(BinOp::Sub, lhs, rhs) = &value.kind else { panic!() };
        assert!(matches!(lhs.kind, ExprKind::Binary(BinOp::Sub, _, _)));
        assert_eq!(rhs.kind, ExprKind::Lit(Literal::Int(2)));
    }

    #[test]
    fn definite_assignment() {
        assert_eq!(
            kind_of("fn f(c) { if c { x = 1 }\n return x }"),
            ParseErrorKind::MaybeUnassigned("x".into())
        );
        assert!(parse_src("fn f(c) { if c { x = 1 } else { x = 2 }\n return x }").is_ok());
        assert!(parse_src("fn f(c) { if c { return 0 } else { x = 2 }\n return x }").is_ok());
        assert_eq!(kind_of("fn f() { return y }"), ParseErrorKind::UnknownVariable("y".into()));
    }

    #[test]
    fn duplicate_names() {
        assert_eq!(kind_of("fn f() {}\nfn f() {}"), ParseErrorKind::DuplicateFunction("f".into()));
        assert_eq!(kind_of("fn f(a, a) {}"), ParseErrorKind::DuplicateParam("a".into()));
        assert_eq!(kind_of("x = {a: 1, a: 2}"), ParseErrorKind::DuplicateField("a".into()));
        assert_eq!(kind_of("fn print(x) {}"), ParseErrorKind::ReservedName("print".into()));
    }

    #[test]
    fn top_level_statements_become_main() {
        let p = parse_src("fn g() { return 2 }\nprint(g())").unwrap();
        assert_eq!(p.functions.last().unwrap().name, "main");
        assert_eq!(kind_of("fn main() {}\nprint(1)"), ParseErrorKind::MainConflict);
    }

    #[test]
    fn unreachable_code() {
        assert_eq!(kind_of("fn f() { return 1\n print(2) }"), ParseErrorKind::Unreachable);
    }

    #[test]
    fn repeated_swap_root() {
        assert_eq!(
            kind_of("fn g(&a, &b) { return }\nx = {p: 1, q: 2}\ng(&x.p, &x.q)"),
            ParseErrorKind::RepeatedSwap("x".into())
        );
    }

    #[test]
    fn newlines_inside_brackets() {
        let src = "x = [\n  1,\n  2,\n]\ny = {\n a: 1,\n b: 2\n}\nz = x[0] +\n  1\n";
        assert!(parse_src(src).is_ok());
    }

    #[test]
    fn negative_literals_fold() {
        let p = parse_src("a = -5\nb = -(2.5)\nc = -9223372036854775808").unwrap();
        let values: Vec<_> = p.functions[0]
            .body
            .iter()
            .map(|s| match &s.kind {
                StmtKind::Assign { value, .. } => value.kind.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(values[0], ExprKind::Lit(Literal::Int(-5)));
        assert_eq!(values[1], ExprKind::Lit(Literal::Float(-2.5)));
        assert_eq!(values[2], ExprKind::Lit(Literal::Int(i64::MIN)));
    }
}
