//! Type checking and evaluation of expressions against a workspace.

use std::fmt;

use chowcalc::rr::hrr_rhs;
use chowcalc::{BundleClass, ChowClass, KClass, Rational, TrackedBundle};
use serde::{Deserialize, Serialize};

use crate::expr::{Expr, ExprKind, Span};
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Type {
    Bundle,
    Chow,
    Scalar,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Bundle => "bundle",
            Type::Chow => "Chow class",
            Type::Scalar => "scalar",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Type,
    UnknownIdentifier,
    Domain,
    /// A core invariant failed; never the user's fault.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}-{}: {}", self.span.start, self.span.end, self.message)
    }
}

impl std::error::Error for EvalError {}

fn err(kind: ErrorKind, span: Span, message: impl Into<String>) -> EvalError {
    EvalError { kind, span, message: message.into() }
}

fn from_core(span: Span, e: chowcalc::Error) -> EvalError {
    let kind = match e {
        chowcalc::Error::Invariant(_) => ErrorKind::Internal,
        _ => ErrorKind::Domain,
    };
    err(kind, span, e.to_string())
}

/// The type of `e`, or the first type error found.
pub fn type_of(e: &Expr, ws: &Workspace) -> Result<Type, EvalError> {
    use ExprKind as K;
    let expect = |inner: &Expr, want: Type| -> Result<(), EvalError> {
        let got = type_of(inner, ws)?;
        let ok = got == want || (want == Type::Chow && got == Type::Scalar);
        if ok {
            Ok(())
        } else {
            Err(err(ErrorKind::Type, inner.span, format!("expected a {want}, found a {got}")))
        }
    };
    let nonneg = |k: i64, what: &str| -> Result<(), EvalError> {
        if k < 0 {
            Err(err(ErrorKind::Domain, e.span, format!("{what} index must be non-negative, got {k}")))
        } else {
            Ok(())
        }
    };
    Ok(match &e.kind {
        K::Int(_) => Type::Scalar,
        K::Hyperplane => Type::Chow,
        K::Tangent | K::Line(_) => Type::Bundle,
        K::Name(name) => {
            if ws.bundles.contains_key(name) {
                Type::Bundle
            } else {
                return Err(err(ErrorKind::UnknownIdentifier, e.span, format!("unknown identifier {name:?}")));
            }
        }
        K::Sum(args) | K::Tensor(args) => {
            for a in args {
                expect(a, Type::Bundle)?;
            }
            Type::Bundle
        }
        K::Dual(a) | K::Det(a) => {
            expect(a, Type::Bundle)?;
            Type::Bundle
        }
        K::Wedge(k, a) | K::Sym(k, a) => {
            nonneg(*k, if matches!(e.kind, K::Wedge(..)) { "wedge" } else { "sym" })?;
            expect(a, Type::Bundle)?;
            Type::Bundle
        }
        K::Ch(a) | K::Td(a) | K::Segre(a) | K::Chern(None, a) => {
            expect(a, Type::Bundle)?;
            Type::Chow
        }
        K::Chern(Some(k), a) => {
            nonneg(*k, "Chern class")?;
            expect(a, Type::Bundle)?;
            Type::Chow
        }
        K::Chi(a) | K::Rank(a) | K::Degree(a) => {
            expect(a, Type::Bundle)?;
            Type::Scalar
        }
        K::Integral(a) => {
            expect(a, Type::Chow)?;
            Type::Scalar
        }
        K::Add(a, b) | K::Sub(a, b) | K::Mul(a, b) => {
            let (ta, tb) = (type_of(a, ws)?, type_of(b, ws)?);
            for (t, x) in [(ta, a), (tb, b)] {
                if t == Type::Bundle {
                    let hint = if matches!(e.kind, K::Mul(..)) { "tensor" } else { "sum" };
                    return Err(err(
                        ErrorKind::Type,
                        x.span,
                        format!("arithmetic needs Chow classes or scalars, found a bundle (use {hint}(...))"),
                    ));
                }
            }
            if ta == Type::Chow || tb == Type::Chow {
                Type::Chow
            } else {
                Type::Scalar
            }
        }
        K::Neg(a) | K::Pow(a, _) => {
            let t = type_of(a, ws)?;
            if t == Type::Bundle {
                return Err(err(ErrorKind::Type, a.span, "expected a Chow class or scalar, found a bundle"));
            }
            t
        }
    })
}

/// A value together with its documented JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "lowercase")]
pub enum Value {
    Scalar(Rational),
    Chow(ChowClass),
    Bundle(BundleValue),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleValue {
    pub bundle: BundleClass,
    pub kclass: Option<KClass>,
}

impl From<TrackedBundle> for Value {
    fn from(t: TrackedBundle) -> Self {
        Value::Bundle(BundleValue { bundle: t.bundle, kclass: t.kclass })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(q) => write!(f, "{q}"),
            Value::Chow(c) => write!(f, "{c}"),
            Value::Bundle(b) => {
                write!(f, "rank {}, c = {}", b.bundle.rank(), b.bundle.chern())?;
                if let Some(k) = &b.kclass {
                    write!(f, ", K = {k}")?;
                }
                Ok(())
            }
        }
    }
}

/// Type-checks, then evaluates.
pub fn evaluate(e: &Expr, ws: &Workspace, ambient: usize) -> Result<Value, EvalError> {
    type_of(e, ws)?;
    let ev = Evaluator { ws, n: ambient };
    ev.value(e)
}

/// Evaluates a bundle-valued expression, keeping the K-class when there is one.
pub fn evaluate_bundle(e: &Expr, ws: &Workspace, ambient: usize) -> Result<TrackedBundle, EvalError> {
    let t = type_of(e, ws)?;
    if t != Type::Bundle {
        return Err(err(ErrorKind::Type, e.span, format!("expected a bundle, found a {t}")));
    }
    Evaluator { ws, n: ambient }.bundle(e)
}

struct Evaluator<'a> {
    ws: &'a Workspace,
    n: usize,
}

impl Evaluator<'_> {
    fn value(&self, e: &Expr) -> Result<Value, EvalError> {
        use ExprKind as K;
        Ok(match &e.kind {
            K::Int(_) | K::Chi(_) | K::Rank(_) | K::Degree(_) | K::Integral(_) => Value::Scalar(self.scalar(e)?),
            K::Add(..) | K::Sub(..) | K::Mul(..) | K::Neg(_) | K::Pow(..) => {
                match type_of(e, self.ws)? {
                    Type::Scalar => Value::Scalar(self.scalar(e)?),
                    _ => Value::Chow(self.chow(e)?),
                }
            }
            K::Hyperplane | K::Ch(_) | K::Td(_) | K::Chern(..) | K::Segre(_) => Value::Chow(self.chow(e)?),
            _ => self.bundle(e)?.into(),
        })
    }

    fn bundle(&self, e: &Expr) -> Result<TrackedBundle, EvalError> {
        use ExprKind as K;
        let core = |r: chowcalc::Result<TrackedBundle>| r.map_err(|x| from_core(e.span, x));
        let untracked = |r: chowcalc::Result<BundleClass>| r.map(TrackedBundle::untracked).map_err(|x| from_core(e.span, x));
        match &e.kind {
            K::Line(d) => core(TrackedBundle::line(self.n, *d)),
            K::Tangent => core(TrackedBundle::tangent(self.n)),
            K::Name(name) => {
                let b = self.ws.bundles.get(name).ok_or_else(|| {
                    err(ErrorKind::UnknownIdentifier, e.span, format!("unknown identifier {name:?}"))
                })?;
                if b.bundle.ambient() != self.n {
                    return Err(err(
                        ErrorKind::Domain,
                        e.span,
                        format!("{name} lives on P^{}, not P^{}", b.bundle.ambient(), self.n),
                    ));
                }
                Ok(b.clone())
            }
            K::Sum(args) | K::Tensor(args) => {
                let is_sum = matches!(e.kind, K::Sum(_));
                let mut acc = self.bundle(&args[0])?;
                for a in &args[1..] {
                    let b = self.bundle(a)?;
                    acc = core(if is_sum { acc.direct_sum(&b) } else { acc.tensor(&b) })?;
                }
                Ok(acc)
            }
            K::Dual(a) => core(self.bundle(a)?.dual()),
            K::Det(a) => untracked(self.bundle(a)?.bundle.determinant()),
            K::Wedge(k, a) => untracked(self.bundle(a)?.bundle.wedge(*k)),
            K::Sym(k, a) => untracked(self.bundle(a)?.bundle.sym(*k)),
            _ => Err(err(ErrorKind::Internal, e.span, "not a bundle expression")),
        }
    }

    fn chow(&self, e: &Expr) -> Result<ChowClass, EvalError> {
        use ExprKind as K;
        let n = self.n;
        let mismatch = |x: chowcalc::Error| from_core(e.span, x);
        Ok(match &e.kind {
            K::Hyperplane => ChowClass::hyperplane(n),
            K::Ch(a) => self.bundle(a)?.bundle.chern_character(),
            K::Td(a) => self.bundle(a)?.bundle.todd(),
            K::Segre(a) => self.bundle(a)?.bundle.segre(),
            K::Chern(None, a) => self.bundle(a)?.bundle.chern().clone(),
            K::Chern(Some(k), a) => {
                let b = self.bundle(a)?;
                let k = *k as usize;
                if k > n {
                    ChowClass::zero(n)
                } else {
                    b.bundle.chern_class(k)
                }
            }
            K::Add(a, b) => self.chow(a)?.try_add(&self.chow(b)?).map_err(mismatch)?,
            K::Sub(a, b) => self.chow(a)?.try_sub(&self.chow(b)?).map_err(mismatch)?,
            K::Mul(a, b) => self.chow(a)?.try_mul(&self.chow(b)?).map_err(mismatch)?,
            K::Neg(a) => self.chow(a)?.scale(&Rational::from(-1)),
            K::Pow(a, p) => self.chow(a)?.pow(*p),
            _ => ChowClass::scalar(n, self.scalar(e)?),
        })
    }

    fn scalar(&self, e: &Expr) -> Result<Rational, EvalError> {
        use ExprKind as K;
        Ok(match &e.kind {
            K::Int(v) => Rational::from(v.clone()),
            K::Chi(a) => {
                let b = self.bundle(a)?;
                match &b.kclass {
                    Some(k) => Rational::from(k.euler_char()),
                    None => hrr_rhs(&b.bundle).map_err(|x| from_core(e.span, x))?,
                }
            }
            K::Rank(a) => Rational::from(self.bundle(a)?.bundle.rank()),
            K::Degree(a) => self.bundle(a)?.bundle.degree(),
            K::Integral(a) => self.chow(a)?.integral(),
            K::Add(a, b) => self.scalar(a)? + self.scalar(b)?,
            K::Sub(a, b) => self.scalar(a)? - self.scalar(b)?,
            K::Mul(a, b) => self.scalar(a)? * self.scalar(b)?,
            K::Neg(a) => -self.scalar(a)?,
            K::Pow(a, p) => self.scalar(a)?.pow(*p),
            _ => return Err(err(ErrorKind::Internal, e.span, "not a scalar expression")),
        })
    }
}
