//! Expression language for the `eval` command.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*')? factor)*
//! factor := '-' factor | atom ('^' INT)?
//! atom   := INT ('/' INT)? | '[' ints? ']' | Z<n> | Q<n> | c<n> | v<n> | q<n>
//!         | name '(' args ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use qsym_core::diamond;
use qsym_core::nsymm::{self, Side};
use qsym_core::poly::{Monomial, Poly};
use qsym_core::qsymm;
use qsym_core::ring::scalar_string;
use qsym_core::steenrod::SteenrodContext;
use qsym_core::witt::symm::{self, SymmTensor};
use qsym_core::{AlgebraElement, Composition, Ring, Scalar, TensorElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("evaluation error: {0}")]
    Eval(String),
}

fn syntax(col: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax { col, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// `Z_n` in NSymm.
    Z,
    /// Newton primitive `Q_n` in NSymm.
    NewtonQ,
    /// `c_n` in Symm.
    C,
    /// Witt generator `v_n` in Symm.
    V,
    /// Newton primitive `q_n` in Symm.
    NewtonSymm,
}

impl GenKind {
    fn prefix(self) -> &'static str {
        match self {
            GenKind::Z => "Z",
            GenKind::NewtonQ => "Q",
            GenKind::C => "c",
            GenKind::V => "v",
            GenKind::NewtonSymm => "q",
        }
    }

    fn from_prefix(s: &str) -> Option<Self> {
        Some(match s {
            "Z" => GenKind::Z,
            "Q" => GenKind::NewtonQ,
            "c" => GenKind::C,
            "v" => GenKind::V,
            "q" => GenKind::NewtonSymm,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative literal, `n` or `n/d`.
    Number { numer: BigInt, denom: Option<BigInt> },
    Key(Vec<u32>),
    Gen(GenKind, u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Antipode(Box<Expr>),
    Coproduct(Box<Expr>),
    Steenrod(u32, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Diamond(Box<Expr>, Box<Expr>),
    Abelianize(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Gen(GenKind, u32),
    Name(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((col, Tok::Int(s.parse().expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if digits_start < i {
                let kind = GenKind::from_prefix(&name).ok_or_else(|| syntax(col, format!("unknown generator '{name}'")))?;
                let n: String = chars[digits_start..i].iter().collect();
                let n: u32 = n.parse().map_err(|_| syntax(col, "generator index too large"))?;
                if n == 0 {
                    return Err(syntax(col, "generator index must be at least 1"));
                }
                out.push((col, Tok::Gen(kind, n)));
            } else {
                out.push((col, Tok::Name(name)));
            }
            continue;
        }
        let tok = match c {
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            other => return Err(syntax(col, format!("unexpected character '{other}'"))),
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        let col = self.col();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(col, format!("expected {what}"))),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ExprError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => u32::try_from(&n).map_err(|_| syntax(col, format!("{what} too large"))),
            _ => Err(syntax(col, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Int(_) | Tok::Gen(..) | Tok::Name(_) | Tok::LBracket | Tok::LParen) => {}
                _ => return Ok(lhs),
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.small_int("exponent")?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Expr::Number { numer: n, denom: Some(d) }),
                        Some(Tok::Int(_)) => Err(syntax(dcol, "division by zero")),
                        _ => Err(syntax(dcol, "expected denominator")),
                    }
                } else {
                    Ok(Expr::Number { numer: n, denom: None })
                }
            }
            Some(Tok::Gen(kind, n)) => Ok(Expr::Gen(kind, n)),
            Some(Tok::LBracket) => {
                let mut parts = Vec::new();
                if self.peek() != Some(&Tok::RBracket) {
                    loop {
                        let pcol = self.col();
                        let p = self.small_int("positive integer")?;
                        if p == 0 {
                            return Err(syntax(pcol, "composition parts must be positive"));
                        }
                        parts.push(p);
                        if self.peek() == Some(&Tok::Comma) {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBracket, "']'")?;
                Ok(Expr::Key(parts))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Name(name)) => self.call(&name, col),
            _ => Err(syntax(col, "expected a term")),
        }
    }

    fn call(&mut self, name: &str, col: usize) -> Result<Expr, ExprError> {
        self.expect(Tok::LParen, "'(' after function name")?;
        let e = match name {
            "antipode" => Expr::Antipode(Box::new(self.expr()?)),
            "coproduct" => Expr::Coproduct(Box::new(self.expr()?)),
            "abelianize" => Expr::Abelianize(Box::new(self.expr()?)),
            "steenrod" => {
                let k = self.small_int("operation index")?;
                self.expect(Tok::Comma, "','")?;
                Expr::Steenrod(k, Box::new(self.expr()?))
            }
            "pair" | "diamond" => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.expr()?;
                if name == "pair" {
                    Expr::Pair(Box::new(a), Box::new(b))
                } else {
                    Expr::Diamond(Box::new(a), Box::new(b))
                }
            }
            other => return Err(syntax(col, format!("unknown function '{other}'"))),
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Number { numer, denom: None } => write!(f, "{numer}"),
            Expr::Number { numer, denom: Some(d) } => write!(f, "{numer}/{d}"),
            Expr::Key(parts) => {
                let s: Vec<String> = parts.iter().map(u32::to_string).collect();
                write!(f, "[{}]", s.join(","))
            }
            Expr::Gen(kind, n) => write!(f, "{}{n}", kind.prefix()),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
            Expr::Antipode(a) => call1(f, "antipode", a),
            Expr::Coproduct(a) => call1(f, "coproduct", a),
            Expr::Abelianize(a) => call1(f, "abelianize", a),
            Expr::Steenrod(k, a) => write!(f, "steenrod({k}, {a})"),
            Expr::Pair(a, b) => write!(f, "pair({a}, {b})"),
            Expr::Diamond(a, b) => write!(f, "diamond({a}, {b})"),
        }
    }
}

fn call1(f: &mut fmt::Formatter<'_>, name: &str, a: &Expr) -> fmt::Result {
    write!(f, "{name}({a})")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Scalar,
    QSymm,
    NSymm,
    Symm,
    Tensor(Box<Algebra>),
}

impl Algebra {
    pub fn name(&self) -> String {
        match self {
            Algebra::Scalar => "scalar".into(),
            Algebra::QSymm => "qsymm".into(),
            Algebra::NSymm => "nsymm".into(),
            Algebra::Symm => "symm".into(),
            Algebra::Tensor(a) => format!("{}⊗{}", a.name(), a.name()),
        }
    }
}

fn mismatch(op: &str, a: &Algebra, b: &Algebra) -> ExprError {
    ExprError::Type(format!("cannot {op} {} and {}", a.name(), b.name()))
}

fn expect_algebra(e: &Expr, want: Algebra, what: &str) -> Result<(), ExprError> {
    let got = typecheck(e)?;
    if got != want {
        return Err(ExprError::Type(format!("{what} expects {}, got {}", want.name(), got.name())));
    }
    Ok(())
}

/// Ambient algebra of an expression, inferred bottom-up.
pub fn typecheck(e: &Expr) -> Result<Algebra, ExprError> {
    Ok(match e {
        Expr::Number { .. } => Algebra::Scalar,
        Expr::Key(_) => Algebra::QSymm,
        Expr::Gen(GenKind::Z | GenKind::NewtonQ, _) => Algebra::NSymm,
        Expr::Gen(..) => Algebra::Symm,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (ta, tb) = (typecheck(a)?, typecheck(b)?);
            match (&ta, &tb) {
                _ if ta == tb => ta,
                (Algebra::Scalar, Algebra::Tensor(_)) | (Algebra::Tensor(_), Algebra::Scalar) => {
                    return Err(mismatch("add", &ta, &tb))
                }
                (Algebra::Scalar, _) => tb,
                (_, Algebra::Scalar) => ta,
                _ => return Err(mismatch("add", &ta, &tb)),
            }
        }
        Expr::Mul(a, b) => {
            let (ta, tb) = (typecheck(a)?, typecheck(b)?);
            match (&ta, &tb) {
                _ if ta == tb => ta,
                (Algebra::Scalar, _) => tb,
                (_, Algebra::Scalar) => ta,
                _ => return Err(mismatch("multiply", &ta, &tb)),
            }
        }
        Expr::Neg(a) | Expr::Pow(a, _) => typecheck(a)?,
        Expr::Antipode(a) => match typecheck(a)? {
            t @ (Algebra::QSymm | Algebra::NSymm | Algebra::Symm) => t,
            t => return Err(ExprError::Type(format!("antipode is not defined on {}", t.name()))),
        },
        Expr::Coproduct(a) => match typecheck(a)? {
            t @ (Algebra::QSymm | Algebra::NSymm | Algebra::Symm) => Algebra::Tensor(Box::new(t)),
            t => return Err(ExprError::Type(format!("coproduct is not defined on {}", t.name()))),
        },
        Expr::Steenrod(_, a) => {
            expect_algebra(a, Algebra::QSymm, "steenrod")?;
            Algebra::QSymm
        }
        Expr::Pair(a, b) => {
            expect_algebra(a, Algebra::QSymm, "pair (first argument)")?;
            expect_algebra(b, Algebra::NSymm, "pair (second argument)")?;
            Algebra::Scalar
        }
        Expr::Diamond(a, b) => {
            expect_algebra(a, Algebra::NSymm, "diamond")?;
            expect_algebra(b, Algebra::NSymm, "diamond")?;
            Algebra::NSymm
        }
        Expr::Abelianize(a) => {
            expect_algebra(a, Algebra::NSymm, "abelianize")?;
            Algebra::Symm
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Ring, Scalar),
    QSymm(AlgebraElement),
    NSymm(AlgebraElement),
    Symm(Poly),
    QSymmTensor(TensorElement),
    NSymmTensor(TensorElement),
    SymmTensor(SymmTensor),
}

fn eval_err(e: impl fmt::Display) -> ExprError {
    ExprError::Eval(e.to_string())
}

impl Value {
    pub fn algebra(&self) -> Algebra {
        match self {
            Value::Scalar(..) => Algebra::Scalar,
            Value::QSymm(_) => Algebra::QSymm,
            Value::NSymm(_) => Algebra::NSymm,
            Value::Symm(_) => Algebra::Symm,
            Value::QSymmTensor(_) => Algebra::Tensor(Box::new(Algebra::QSymm)),
            Value::NSymmTensor(_) => Algebra::Tensor(Box::new(Algebra::NSymm)),
            Value::SymmTensor(_) => Algebra::Tensor(Box::new(Algebra::Symm)),
        }
    }

    /// Promote a scalar into the algebra of `like`.
    fn lift(ring: Ring, c: &Scalar, like: &Algebra) -> Value {
        match like {
            Algebra::QSymm => Value::QSymm(AlgebraElement::scalar(ring, c.clone())),
            Algebra::NSymm => Value::NSymm(AlgebraElement::scalar(ring, c.clone())),
            Algebra::Symm => Value::Symm(Poly::scalar(ring, c.clone())),
            _ => Value::Scalar(ring, c.clone()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Scalar(_, c) => scalar_string(c),
            Value::QSymm(x) => qsymm::render(x),
            Value::NSymm(x) => nsymm::render(x),
            Value::Symm(x) => symm::render(x),
            Value::QSymmTensor(t) => qsymm::render_tensor_element(t),
            Value::NSymmTensor(t) => nsymm::render_tensor_element(t),
            Value::SymmTensor(t) => symm::render_tensor_named(t, "c"),
        }
    }

    /// `{algebra, ring, terms: [{key, coeff}]}` with decimal-string coefficients.
    pub fn to_json(&self, ring: Ring) -> serde_json::Value {
        use serde_json::json;
        fn comp(k: &Composition) -> serde_json::Value {
            json!(k.parts())
        }
        fn mono(m: &Monomial) -> serde_json::Value {
            json!(m.variables().iter().map(|i| i + 1).collect::<Vec<_>>())
        }
        let terms: Vec<serde_json::Value> = match self {
            Value::Scalar(_, c) => vec![json!({"key": [], "coeff": scalar_string(c)})],
            Value::QSymm(x) | Value::NSymm(x) => {
                x.terms().map(|(k, c)| json!({"key": comp(k), "coeff": scalar_string(c)})).collect()
            }
            Value::Symm(x) => x.terms().map(|(m, c)| json!({"key": mono(m), "coeff": scalar_string(c)})).collect(),
            Value::QSymmTensor(t) | Value::NSymmTensor(t) => t
                .terms()
                .map(|((a, b), c)| json!({"key": [comp(a), comp(b)], "coeff": scalar_string(c)}))
                .collect(),
            Value::SymmTensor(t) => t
                .terms()
                .map(|((a, b), c)| json!({"key": [mono(a), mono(b)], "coeff": scalar_string(c)}))
                .collect(),
        };
        json!({"algebra": self.algebra().name(), "ring": ring.tag(), "terms": terms})
    }
}

/// Typecheck and evaluate over `ring`.
pub fn eval(e: &Expr, ring: Ring) -> Result<Value, ExprError> {
    typecheck(e)?;
    eval_inner(e, ring)
}

fn eval_inner(e: &Expr, ring: Ring) -> Result<Value, ExprError> {
    let ev = |x: &Expr| eval_inner(x, ring);
    Ok(match e {
        Expr::Number { numer, denom } => {
            let q = Scalar::new(numer.clone(), denom.clone().unwrap_or_else(|| BigInt::from(1)));
            Value::Scalar(ring, ring.element(q).map_err(eval_err)?)
        }
        Expr::Key(parts) => Value::QSymm(AlgebraElement::basis(ring, Composition::new(parts.clone()).map_err(eval_err)?)),
        Expr::Gen(kind, n) => match kind {
            GenKind::Z => Value::NSymm(nsymm::generator(ring, *n)),
            GenKind::NewtonQ => Value::NSymm(nsymm::newton_q(ring, *n, Side::Left).map_err(eval_err)?),
            GenKind::C => Value::Symm(symm::c(ring, *n as usize)),
            GenKind::V => Value::Symm(symm::witt_generator(ring, *n as usize).map_err(eval_err)?),
            GenKind::NewtonSymm => Value::Symm(symm::newton_q(ring, *n as usize).map_err(eval_err)?),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = unify(ev(a)?, ev(b)?);
            let sub = matches!(e, Expr::Sub(..));
            combine(x, y, |p, q| if sub { p - q } else { p + q }, |p, q| if sub { p - q } else { p + q }, |p, q| {
                if sub {
                    ring.sub(p, q)
                } else {
                    ring.add(p, q)
                }
            })?
        }
        Expr::Mul(a, b) => {
            let (x, y) = (ev(a)?, ev(b)?);
            match (&x, &y) {
                (Value::Scalar(_, c), other) | (other, Value::Scalar(_, c)) if !matches!(other, Value::Scalar(..)) => {
                    scale(other, c)
                }
                _ => multiply(&x, &y)?,
            }
        }
        Expr::Neg(a) => scale(&ev(a)?, &ring.neg(&ring.one())),
        Expr::Pow(a, k) => {
            let x = ev(a)?;
            match &x {
                Value::QSymm(p) => Value::QSymm(qsymm::shuffle_power(p, *k)),
                Value::Scalar(_, c) => Value::Scalar(ring, ring.pow(c, *k)),
                _ => {
                    let mut acc = one_like(&x, ring);
                    for _ in 0..*k {
                        acc = multiply(&acc, &x)?;
                    }
                    acc
                }
            }
        }
        Expr::Antipode(a) => match ev(a)? {
            Value::QSymm(x) => Value::QSymm(qsymm::antipode(&x)),
            Value::NSymm(x) => Value::NSymm(nsymm::antipode(&x)),
            Value::Symm(x) => Value::Symm(symm::antipode(&x)),
            _ => unreachable!("typechecked"),
        },
        Expr::Coproduct(a) => match ev(a)? {
            Value::QSymm(x) => Value::QSymmTensor(qsymm::deconcat_coproduct(&x)),
            Value::NSymm(x) => Value::NSymmTensor(nsymm::coproduct(&x)),
            Value::Symm(x) => Value::SymmTensor(symm::cartan_coproduct(&x)),
            _ => unreachable!("typechecked"),
        },
        Expr::Steenrod(k, a) => {
            let Ring::PrimeField(p) = ring else {
                return Err(ExprError::Eval(format!("steenrod needs a prime field ring (Fp:<p>), got {}", ring.tag())));
            };
            let ctx = SteenrodContext::new(p).map_err(eval_err)?;
            let Value::QSymm(x) = ev(a)? else { unreachable!("typechecked") };
            Value::QSymm(ctx.apply(*k, &x).map_err(eval_err)?)
        }
        Expr::Pair(a, b) => {
            let (Value::QSymm(x), Value::NSymm(y)) = (ev(a)?, ev(b)?) else { unreachable!("typechecked") };
            Value::Scalar(ring, qsymm::pairing(&x, &y).map_err(eval_err)?)
        }
        Expr::Diamond(a, b) => {
            let (Value::NSymm(x), Value::NSymm(y)) = (ev(a)?, ev(b)?) else { unreachable!("typechecked") };
            Value::NSymm(diamond::diamond(&x, &y).map_err(eval_err)?)
        }
        Expr::Abelianize(a) => {
            let Value::NSymm(x) = ev(a)? else { unreachable!("typechecked") };
            Value::Symm(diamond::abelianize(&x))
        }
    })
}

fn unify(x: Value, y: Value) -> (Value, Value) {
    match (&x, &y) {
        (Value::Scalar(r, c), other) if !matches!(other, Value::Scalar(..)) => (Value::lift(*r, c, &other.algebra()), y),
        (other, Value::Scalar(r, c)) if !matches!(other, Value::Scalar(..)) => {
            let lifted = Value::lift(*r, c, &other.algebra());
            (x, lifted)
        }
        _ => (x, y),
    }
}

fn combine(
    x: Value,
    y: Value,
    comp: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    poly: impl Fn(&Poly, &Poly) -> Poly,
    scalar: impl Fn(&Scalar, &Scalar) -> Scalar,
) -> Result<Value, ExprError> {
    Ok(match (x, y) {
        (Value::Scalar(r, a), Value::Scalar(_, b)) => Value::Scalar(r, scalar(&a, &b)),
        (Value::QSymm(a), Value::QSymm(b)) => Value::QSymm(comp(&a, &b)),
        (Value::NSymm(a), Value::NSymm(b)) => Value::NSymm(comp(&a, &b)),
        (Value::Symm(a), Value::Symm(b)) => Value::Symm(poly(&a, &b)),
        (Value::QSymmTensor(a), Value::QSymmTensor(b)) => Value::QSymmTensor(&a + &b),
        (Value::NSymmTensor(a), Value::NSymmTensor(b)) => Value::NSymmTensor(&a + &b),
        (Value::SymmTensor(a), Value::SymmTensor(b)) => Value::SymmTensor(&a + &b),
        (a, b) => return Err(mismatch("combine", &a.algebra(), &b.algebra())),
    })
}

fn scale(x: &Value, c: &Scalar) -> Value {
    match x {
        Value::Scalar(r, a) => Value::Scalar(*r, r.mul(a, c)),
        Value::QSymm(a) => Value::QSymm(a.scale(c)),
        Value::NSymm(a) => Value::NSymm(a.scale(c)),
        Value::Symm(a) => Value::Symm(a.scale(c)),
        Value::QSymmTensor(a) => Value::QSymmTensor(a.scale(c)),
        Value::NSymmTensor(a) => Value::NSymmTensor(a.scale(c)),
        Value::SymmTensor(a) => Value::SymmTensor(a.scale(c)),
    }
}

fn one_like(x: &Value, ring: Ring) -> Value {
    match x {
        Value::Scalar(..) => Value::Scalar(ring, ring.one()),
        Value::QSymm(_) => Value::QSymm(AlgebraElement::one(ring)),
        Value::NSymm(_) => Value::NSymm(AlgebraElement::one(ring)),
        Value::Symm(_) => Value::Symm(Poly::one(ring)),
        Value::QSymmTensor(_) => Value::QSymmTensor(TensorElement::one(ring)),
        Value::NSymmTensor(_) => Value::NSymmTensor(TensorElement::one(ring)),
        Value::SymmTensor(_) => Value::SymmTensor(SymmTensor::one(ring)),
    }
}

fn multiply(x: &Value, y: &Value) -> Result<Value, ExprError> {
    Ok(match (x, y) {
        (Value::Scalar(r, a), Value::Scalar(_, b)) => Value::Scalar(*r, r.mul(a, b)),
        (Value::QSymm(a), Value::QSymm(b)) => Value::QSymm(qsymm::overlapping_shuffle(a, b).map_err(eval_err)?),
        (Value::NSymm(a), Value::NSymm(b)) => Value::NSymm(a.product(b)),
        (Value::Symm(a), Value::Symm(b)) => Value::Symm(a.product(b)),
        (Value::QSymmTensor(a), Value::QSymmTensor(b)) => Value::QSymmTensor(qsymm::tensor_shuffle(a, b)),
        (Value::NSymmTensor(a), Value::NSymmTensor(b)) => Value::NSymmTensor(nsymm::tensor_product(a, b)),
        (Value::SymmTensor(a), Value::SymmTensor(b)) => Value::SymmTensor(a.product(b)),
        (a, b) => return Err(mismatch("multiply", &a.algebra(), &b.algebra())),
    })
}

/// Parse, typecheck and evaluate.
pub fn evaluate(text: &str, ring: Ring) -> Result<Value, ExprError> {
    eval(&parse(text)?, ring)
}
