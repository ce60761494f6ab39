//! The expression language: bundles, Chow classes and scalars.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Positions are 1-based character offsets into the input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

/// An expression node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    /// A bundle defined in the workspace.
    Name(String),
    /// The hyperplane class `H`.
    Hyperplane,
    /// The tangent bundle `T`.
    Tangent,
    /// `O(d)`.
    Line(i64),
    Sum(Vec<Expr>),
    Tensor(Vec<Expr>),
    Dual(Box<Expr>),
    Det(Box<Expr>),
    Wedge(i64, Box<Expr>),
    Sym(i64, Box<Expr>),
    Ch(Box<Expr>),
    Td(Box<Expr>),
    /// `c(E)` for the total class, `c(k, E)` for `c_k`.
    Chern(Option<i64>, Box<Expr>),
    Segre(Box<Expr>),
    Chi(Box<Expr>),
    Integral(Box<Expr>),
    Rank(Box<Expr>),
    Degree(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character position.
    pub position: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, Span { start, end: start }));
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
            let s: String = chars[i..j].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), Span { start, end: j }));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let j = (i..chars.len())
                .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            out.push((Tok::Ident(chars[i..j].iter().collect()), Span { start, end: j }));
            i = j;
        } else {
            return Err(ParseError {
                position: start,
                message: format!("unexpected character {c:?}"),
                expected: vec![],
            });
        }
    }
    let end = chars.len() + 1;
    out.push((Tok::End, Span { start: end, end }));
    Ok(out)
}

/// Function names with their argument shapes.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// One integer.
    Int,
    /// One expression.
    One,
    /// One or more expressions.
    Many,
    /// Integer then expression.
    IntThen,
    /// Optional integer then expression.
    OptIntThen,
}

const FUNCTIONS: &[(&str, Shape)] = &[
    ("O", Shape::Int),
    ("sum", Shape::Many),
    ("tensor", Shape::Many),
    ("dual", Shape::One),
    ("det", Shape::One),
    ("wedge", Shape::IntThen),
    ("sym", Shape::IntThen),
    ("ch", Shape::One),
    ("td", Shape::One),
    ("c", Shape::OptIntThen),
    ("segre", Shape::One),
    ("chi", Shape::One),
    ("integral", Shape::One),
    ("rank", Shape::One),
    ("degree", Shape::One),
];

/// Names that cannot be used for workspace bundles.
pub fn is_reserved(name: &str) -> bool {
    name == "T" || name == "H" || FUNCTIONS.iter().any(|(f, _)| *f == name)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.span().start,
            message: format!("unexpected {}", self.peek().describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.fail(&[label])
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr { kind: op(Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().1;
            let inner = self.unary()?;
            let span = start.join(inner.span);
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(n), sp) => {
                let e = n.to_u32().ok_or_else(|| ParseError {
                    position: sp.start,
                    message: format!("exponent {n} is too large"),
                    expected: vec![],
                })?;
                let span = base.span.join(sp);
                Ok(Expr { kind: ExprKind::Pow(Box::new(base), e), span })
            }
            _ => {
                self.pos -= 1;
                self.fail(&["integer exponent"])
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let span = self.bump().1;
                Ok(Expr { kind: ExprKind::Int(n), span })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let span = self.bump().1;
                if *self.peek() == Tok::LParen {
                    self.call(name, span)
                } else {
                    let kind = match name.as_str() {
                        "T" => ExprKind::Tangent,
                        "H" => ExprKind::Hyperplane,
                        _ if FUNCTIONS.iter().any(|(f, _)| *f == name) => {
                            return self.fail(&["'('"]);
                        }
                        _ => ExprKind::Name(name),
                    };
                    Ok(Expr { kind, span })
                }
            }
            _ => self.fail(&["integer", "identifier", "'('", "'-'"]),
        }
    }

    fn call(&mut self, name: String, name_span: Span) -> Result<Expr, ParseError> {
        let Some(&(_, shape)) = FUNCTIONS.iter().find(|(f, _)| *f == name) else {
            return Err(ParseError {
                position: name_span.start,
                message: format!("unknown function {name:?}"),
                expected: FUNCTIONS.iter().map(|(f, _)| f.to_string()).collect(),
            });
        };
        self.bump(); // '('
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        let close = self.expect(Tok::RParen, "')' or ','")?;
        let span = name_span.join(close);

        let arity_error = |want: &str| ParseError {
            position: name_span.start,
            message: format!("{name} takes {want}, got {} argument(s)", args.len()),
            expected: vec![],
        };
        let b = |e: Expr| Box::new(e);
        let kind = match (shape, args.len()) {
            (Shape::Int, 1) => ExprKind::Line(int_arg(&args[0])?),
            (Shape::Int, _) => return Err(arity_error("one integer")),
            (Shape::One, 1) => {
                let a = b(args.pop().expect("one"));
                match name.as_str() {
                    "dual" => ExprKind::Dual(a),
                    "det" => ExprKind::Det(a),
                    "ch" => ExprKind::Ch(a),
                    "td" => ExprKind::Td(a),
                    "segre" => ExprKind::Segre(a),
                    "chi" => ExprKind::Chi(a),
                    "integral" => ExprKind::Integral(a),
                    "rank" => ExprKind::Rank(a),
                    "degree" => ExprKind::Degree(a),
                    _ => unreachable!("shape table"),
                }
            }
            (Shape::One, _) => return Err(arity_error("one argument")),
            (Shape::Many, _) => match name.as_str() {
                "sum" => ExprKind::Sum(args),
                "tensor" => ExprKind::Tensor(args),
                _ => unreachable!("shape table"),
            },
            (Shape::IntThen, 2) => {
                let k = int_arg(&args[0])?;
                let a = b(args.pop().expect("two"));
                match name.as_str() {
                    "wedge" => ExprKind::Wedge(k, a),
                    "sym" => ExprKind::Sym(k, a),
                    _ => unreachable!("shape table"),
                }
            }
            (Shape::IntThen, _) => return Err(arity_error("an integer and a bundle")),
            (Shape::OptIntThen, 1) => ExprKind::Chern(None, b(args.pop().expect("one"))),
            (Shape::OptIntThen, 2) => {
                let k = int_arg(&args[0])?;
                ExprKind::Chern(Some(k), b(args.pop().expect("two")))
            }
            (Shape::OptIntThen, _) => return Err(arity_error("a bundle, optionally preceded by an integer")),
        };
        Ok(Expr { kind, span })
    }
}

/// An integer literal, possibly negated.
fn int_arg(e: &Expr) -> Result<i64, ParseError> {
    let bad = || ParseError {
        position: e.span.start,
        message: "expected an integer literal".into(),
        expected: vec!["integer".into()],
    };
    let value = match &e.kind {
        ExprKind::Int(n) => n.clone(),
        ExprKind::Neg(inner) => match &inner.kind {
            ExprKind::Int(n) => -n.clone(),
            _ => return Err(bad()),
        },
        _ => return Err(bad()),
    };
    value.to_i64().ok_or_else(|| ParseError {
        position: e.span.start,
        message: format!("integer {value} is out of range"),
        expected: vec![],
    })
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(e)
}

fn precedence(kind: &ExprKind) -> u8 {
    match kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) => 2,
        ExprKind::Neg(..) => 3,
        ExprKind::Pow(..) => 4,
        _ => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if precedence(&e.kind) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        fn list(f: &mut fmt::Formatter<'_>, name: &str, args: &[Expr]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        }
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Name(s) => write!(f, "{s}"),
            ExprKind::Hyperplane => write!(f, "H"),
            ExprKind::Tangent => write!(f, "T"),
            ExprKind::Line(d) => write!(f, "O({d})"),
            ExprKind::Sum(args) => list(f, "sum", args),
            ExprKind::Tensor(args) => list(f, "tensor", args),
            ExprKind::Dual(a) => write!(f, "dual({a})"),
            ExprKind::Det(a) => write!(f, "det({a})"),
            ExprKind::Wedge(k, a) => write!(f, "wedge({k}, {a})"),
            ExprKind::Sym(k, a) => write!(f, "sym({k}, {a})"),
            ExprKind::Ch(a) => write!(f, "ch({a})"),
            ExprKind::Td(a) => write!(f, "td({a})"),
            ExprKind::Chern(None, a) => write!(f, "c({a})"),
            ExprKind::Chern(Some(k), a) => write!(f, "c({k}, {a})"),
            ExprKind::Segre(a) => write!(f, "segre({a})"),
            ExprKind::Chi(a) => write!(f, "chi({a})"),
            ExprKind::Integral(a) => write!(f, "integral({a})"),
            ExprKind::Rank(a) => write!(f, "rank({a})"),
            ExprKind::Degree(a) => write!(f, "degree({a})"),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
                let (op, p) = match &self.kind {
                    ExprKind::Add(..) => ("+", 1),
                    ExprKind::Sub(..) => ("-", 1),
                    _ => ("*", 2),
                };
                wrap(f, a, p)?;
                write!(f, " {op} ")?;
                wrap(f, b, p + 1)
            }
            ExprKind::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            ExprKind::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(e: &Expr) -> &ExprKind {
        &e.kind
    }

    #[test]
    fn parses_calls() {
        let e = parse("chi(O(3))").unwrap();
        assert!(matches!(k(&e), ExprKind::Chi(inner) if inner.kind == ExprKind::Line(3)));
        let e = parse("integral(ch(O(3)) * td(T))").unwrap();
        assert!(matches!(k(&e), ExprKind::Integral(_)));
        assert_eq!(parse("O(-2)").unwrap().kind, ExprKind::Line(-2));
        assert_eq!(parse("  wedge( -1 ,O(1) ) ").unwrap().kind, ExprKind::Wedge(-1, Box::new(parse("O(1)").unwrap())));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("1 - 2 - 3").unwrap();
        assert_eq!(e.to_string(), "1 - 2 - 3");
        let e = parse("1 - (2 - 3)").unwrap();
        assert_eq!(e.to_string(), "1 - (2 - 3)");
        let e = parse("-H^2 * 3 + 1").unwrap();
        assert_eq!(e.to_string(), "-H^2 * 3 + 1");
        assert!(matches!(k(&e), ExprKind::Add(..)));
        assert_eq!(parse("(1 + H)^3").unwrap().to_string(), "(1 + H)^3");
    }

    #[test]
    fn spans_are_one_based() {
        let e = parse("rank(T)").unwrap();
        assert_eq!(e.span, Span { start: 1, end: 7 });
        let e = parse("1 + foo").unwrap();
        let ExprKind::Add(_, b) = &e.kind else { panic!() };
        assert_eq!(b.span.start, 5);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("chi(O(3)").unwrap_err();
        assert_eq!(err.position, 9);
        assert!(err.expected.contains(&"')' or ','".to_string()));
        let err = parse("1 + * 2").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(err.expected.contains(&"identifier".to_string()));
        let err = parse("ch(T) $").unwrap_err();
        assert_eq!(err.position, 7);
        let err = parse("").unwrap_err();
        assert_eq!(err.position, 1);
        let err = parse("H^x").unwrap_err();
        assert_eq!(err.position, 3);
    }

    #[test]
    fn arity_and_unknown_functions() {
        let err = parse("foo(T)").unwrap_err();
        assert!(err.message.contains("unknown function"));
        assert_eq!(err.position, 1);
        assert!(parse("dual(T, T)").unwrap_err().message.contains("dual takes one argument"));
        assert!(parse("wedge(T)").is_err());
        assert!(parse("O(T)").unwrap_err().message.contains("integer literal"));
        assert!(parse("O(1, 2)").is_err());
        assert!(parse("c(1, 2, T)").is_err());
        assert!(parse("ch").is_err());
    }

    #[test]
    fn reserved_names() {
        assert!(is_reserved("T") && is_reserved("wedge") && is_reserved("O"));
        assert!(!is_reserved("E"));
    }
}
