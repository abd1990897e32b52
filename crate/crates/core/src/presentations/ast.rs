use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{MultiPoly, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    T,
    N,
    Lambda,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::T => "t",
            Param::N => "n",
            Param::Lambda => "lambda",
        }
    }
}

/// Scalar coefficient: a polynomial expression in `t`, `n`, `λ`, possibly
/// containing unknowns to be solved for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffExpr {
    /// Nonnegative literal.
    Num(Rational),
    Param(Param),
    Unknown(String),
    /// Signed summands; printed in parentheses when nested.
    Sum(Vec<(bool, CoeffExpr)>),
    Product(Vec<CoeffExpr>),
    Pow(Box<CoeffExpr>, u32),
}

/// Coefficient evaluated against a parameter assignment: either a known
/// polynomial, or `factor · unknown`.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Known(MultiPoly),
    Linear(String, MultiPoly),
}

impl CoeffExpr {
    pub fn int(n: i64) -> CoeffExpr {
        CoeffExpr::Num(Rational::from_integer(n.into()))
    }

    pub fn unknowns(&self, out: &mut Vec<String>) {
        match self {
            CoeffExpr::Unknown(u) => {
                if !out.contains(u) {
                    out.push(u.clone());
                }
            }
            CoeffExpr::Sum(ts) => ts.iter().for_each(|(_, e)| e.unknowns(out)),
            CoeffExpr::Product(fs) => fs.iter().for_each(|e| e.unknowns(out)),
            CoeffExpr::Pow(b, _) => b.unknowns(out),
            _ => {}
        }
    }

    pub fn mentions_n(&self) -> bool {
        match self {
            CoeffExpr::Param(Param::N) => true,
            CoeffExpr::Sum(ts) => ts.iter().any(|(_, e)| e.mentions_n()),
            CoeffExpr::Product(fs) => fs.iter().any(|e| e.mentions_n()),
            CoeffExpr::Pow(b, _) => b.mentions_n(),
            _ => false,
        }
    }

    pub fn eval(&self, n: Option<i64>) -> Result<Scalar> {
        Ok(match self {
            CoeffExpr::Num(r) => Scalar::Known(MultiPoly::constant(r.clone())),
            CoeffExpr::Param(Param::T) => Scalar::Known(MultiPoly::t()),
            CoeffExpr::Param(Param::Lambda) => Scalar::Known(MultiPoly::lambda()),
            CoeffExpr::Param(Param::N) => Scalar::Known(MultiPoly::int(n.ok_or_else(|| Error::UnboundParameter("n".into()))?)),
            CoeffExpr::Unknown(u) => Scalar::Linear(u.clone(), MultiPoly::one()),
            CoeffExpr::Sum(ts) => {
                let mut acc = MultiPoly::zero();
                for (neg, e) in ts {
                    let v = e.eval_known(n)?;
                    if *neg {
                        acc -= &v;
                    } else {
                        acc += &v;
                    }
                }
                Scalar::Known(acc)
            }
            CoeffExpr::Product(fs) => {
                let mut known = MultiPoly::one();
                let mut unknown: Option<String> = None;
                for f in fs {
                    match f.eval(n)? {
                        Scalar::Known(p) => known = &known * &p,
                        Scalar::Linear(u, p) => {
                            if unknown.is_some() {
                                return Err(Error::InvalidUnknown(format!("{self} is not linear in its unknowns")));
                            }
                            known = &known * &p;
                            unknown = Some(u);
                        }
                    }
                }
                match unknown {
                    Some(u) => Scalar::Linear(u, known),
                    None => Scalar::Known(known),
                }
            }
            CoeffExpr::Pow(b, e) => Scalar::Known(b.eval_known(n)?.pow(*e)),
        })
    }

    pub fn eval_known(&self, n: Option<i64>) -> Result<MultiPoly> {
        match self.eval(n)? {
            Scalar::Known(p) => Ok(p),
            Scalar::Linear(u, _) => Err(Error::InvalidUnknown(format!("unknown {u} is not allowed here"))),
        }
    }

    /// Integer value, for exponents.
    pub fn eval_int(&self, n: Option<i64>) -> Result<i64> {
        let p = self.eval_known(n)?;
        p.as_constant()
            .filter(|c| c.is_integer())
            .and_then(|c| c.to_integer().to_i64())
            .ok_or_else(|| Error::InvalidUnknown(format!("exponent {self} is not an integer")))
    }

    /// Expression tree for a polynomial, in the same shape the parser
    /// produces for its printed form.
    pub fn from_poly(p: &MultiPoly) -> CoeffExpr {
        let mono = |c: &Rational, m: &[u32; 5]| -> CoeffExpr {
            let mut fs = Vec::new();
            let vars = [(Var::T, Param::T), (Var::Lambda, Param::Lambda)];
            if !c.abs().is_one() || vars.iter().all(|(v, _)| m[v.index()] == 0) {
                fs.push(CoeffExpr::Num(c.abs()));
            }
            for (v, prm) in vars {
                match m[v.index()] {
                    0 => {}
                    1 => fs.push(CoeffExpr::Param(prm)),
                    e => fs.push(CoeffExpr::Pow(Box::new(CoeffExpr::Param(prm)), e)),
                }
            }
            if fs.len() == 1 {
                fs.pop().unwrap()
            } else {
                CoeffExpr::Product(fs)
            }
        };
        let terms: Vec<(bool, CoeffExpr)> = p.terms().rev().map(|(m, c)| (c.is_negative(), mono(c, m))).collect();
        match terms.len() {
            0 => CoeffExpr::int(0),
            1 if !terms[0].0 => terms.into_iter().next().unwrap().1,
            _ => CoeffExpr::Sum(terms),
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffExpr::Sum(_) | CoeffExpr::Product(_) => write!(f, "({self})"),
            CoeffExpr::Num(r) if !r.is_integer() => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffExpr::Num(r) => write!(f, "{r}"),
            CoeffExpr::Param(p) => write!(f, "{}", p.name()),
            CoeffExpr::Unknown(u) => write!(f, "{u}"),
            CoeffExpr::Sum(ts) => {
                for (i, (neg, e)) in ts.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, "-")?,
                        (_, false) => write!(f, "+")?,
                    }
                    match e {
                        CoeffExpr::Sum(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            CoeffExpr::Product(fs) => {
                for (i, e) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    match e {
                        CoeffExpr::Sum(_) | CoeffExpr::Product(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            CoeffExpr::Pow(b, e) => {
                b.fmt_factor(f)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    X,
    Y,
    Z,
    H,
    /// `z_i = (ad x)^i z`
    Zi(u32),
    Bracket(Box<Side>, Box<Side>),
    /// `(ad op)^exp arg`
    AdPow {
        op: Box<Word>,
        exp: CoeffExpr,
        arg: Box<Word>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub neg: bool,
    pub coeff: Option<CoeffExpr>,
    pub word: Word,
}

/// Linear combination of words; empty means `0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Side {
    pub terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RelationKind {
    /// Number of occurrences of `z` in every word.
    Type(u32),
    /// Exponent depends on `n`, or the entry is the closing relation.
    Infinity,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Type(k) => write!(f, "type {k}"),
            RelationKind::Infinity => write!(f, "type inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Side,
    pub rhs: Side,
}

impl Word {
    /// Occurrences of `z`; `None` if it depends on `n`.
    pub fn z_count(&self) -> Option<u32> {
        match self {
            Word::X | Word::Y | Word::H => Some(0),
            Word::Z | Word::Zi(_) => Some(1),
            Word::Bracket(a, b) => Some(a.z_count()? + b.z_count()?),
            Word::AdPow { op, exp, arg } => {
                if exp.mentions_n() {
                    return None;
                }
                let e = exp.eval_int(None).ok()?;
                Some(op.z_count()? * e as u32 + arg.z_count()?)
            }
        }
    }

    fn collect_unknowns(&self, out: &mut Vec<String>) {
        match self {
            Word::Bracket(a, b) => {
                a.unknowns_into(out);
                b.unknowns_into(out);
            }
            Word::AdPow { op, arg, .. } => {
                op.collect_unknowns(out);
                arg.collect_unknowns(out);
            }
            _ => {}
        }
    }

    pub fn max_z_index(&self) -> u32 {
        match self {
            Word::Zi(i) => *i,
            Word::Bracket(a, b) => a.max_z_index().max(b.max_z_index()),
            Word::AdPow { op, arg, .. } => op.max_z_index().max(arg.max_z_index()),
            _ => 0,
        }
    }
}

impl Side {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `z` count over the terms.
    pub fn z_count(&self) -> Option<u32> {
        let mut best = 0;
        for t in &self.terms {
            best = best.max(t.word.z_count()?);
        }
        Some(best)
    }

    pub fn unknowns_into(&self, out: &mut Vec<String>) {
        for t in &self.terms {
            if let Some(c) = &t.coeff {
                c.unknowns(out);
            }
            t.word.collect_unknowns(out);
        }
    }

    fn max_z_index(&self) -> u32 {
        self.terms.iter().map(|t| t.word.max_z_index()).max().unwrap_or(0)
    }
}

impl Relation {
    pub fn kind(&self) -> RelationKind {
        match self.lhs.z_count() {
            Some(k) => RelationKind::Type(k),
            None => RelationKind::Infinity,
        }
    }

    pub fn unknowns(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.rhs.unknowns_into(&mut out);
        out
    }

    pub fn has_unknowns(&self) -> bool {
        !self.unknowns().is_empty()
    }

    pub fn max_z_index(&self) -> u32 {
        self.lhs.max_z_index().max(self.rhs.max_z_index())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::X => write!(f, "x"),
            Word::Y => write!(f, "y"),
            Word::Z => write!(f, "z"),
            Word::H => write!(f, "h"),
            Word::Zi(i) => write!(f, "z{i}"),
            Word::Bracket(a, b) => write!(f, "[{a},{b}]"),
            Word::AdPow { op, exp, arg } => {
                write!(f, "(ad {op})^")?;
                match exp {
                    CoeffExpr::Num(r) if r.is_integer() => write!(f, "{r}")?,
                    e => write!(f, "({e})")?,
                }
                write!(f, " {arg}")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coeff {
            Some(c @ CoeffExpr::Sum(_)) => write!(f, "({c})*")?,
            Some(c) => write!(f, "{c}*")?,
            None => {}
        }
        write!(f, "{}", self.word)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.neg) {
                (0, true) => write!(f, "-{t}")?,
                (0, false) => write!(f, "{t}")?,
                (_, true) => write!(f, " - {t}")?,
                (_, false) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Word built from leaves by brackets only, as produced by expansion.
/// Ordered by the printed form.
pub type LinearForm = BTreeMap<String, (Word, MultiPoly)>;

fn add_to(form: &mut LinearForm, w: Word, c: MultiPoly) {
    if c.is_zero() {
        return;
    }
    let key = w.to_string();
    let slot = form.entry(key.clone()).or_insert_with(|| (w, MultiPoly::zero()));
    slot.1 += &c;
    if slot.1.is_zero() {
        form.remove(&key);
    }
}

fn bracket_forms(a: &LinearForm, b: &LinearForm) -> LinearForm {
    let mut out = LinearForm::new();
    for (ka, (wa, ca)) in a {
        for (kb, (wb, cb)) in b {
            if ka == kb {
                continue;
            }
            let c = ca * cb;
            // orient by printed order, tracking the sign
            if ka < kb {
                add_to(&mut out, Word::Bracket(Box::new(single(wa)), Box::new(single(wb))), c);
            } else {
                add_to(&mut out, Word::Bracket(Box::new(single(wb)), Box::new(single(wa))), -c);
            }
        }
    }
    out
}

fn single(w: &Word) -> Side {
    Side {
        terms: vec![Term {
            neg: false,
            coeff: None,
            word: w.clone(),
        }],
    }
}

impl Word {
    /// Multilinear expansion with every bracket oriented so that its left
    /// entry prints before its right entry.
    pub fn linear_form(&self, n: Option<i64>) -> Result<LinearForm> {
        let mut out = LinearForm::new();
        match self {
            Word::X | Word::Y | Word::Z | Word::H | Word::Zi(_) => {
                let w = if *self == Word::Zi(0) { Word::Z } else { self.clone() };
                add_to(&mut out, w, MultiPoly::one());
            }
            Word::Bracket(a, b) => out = bracket_forms(&a.linear_form(n)?, &b.linear_form(n)?),
            Word::AdPow { op, exp, arg } => {
                let k = exp.eval_int(n)?;
                if k < 0 {
                    return Err(Error::InvalidUnknown(format!("negative exponent {k}")));
                }
                let o = op.linear_form(n)?;
                let mut v = arg.linear_form(n)?;
                for _ in 0..k {
                    v = bracket_forms(&o, &v);
                }
                out = v;
            }
        }
        Ok(out)
    }
}

impl Side {
    pub fn linear_form(&self, n: Option<i64>) -> Result<LinearForm> {
        let mut out = LinearForm::new();
        for t in &self.terms {
            let mut c = match &t.coeff {
                Some(c) => c.eval_known(n)?,
                None => MultiPoly::one(),
            };
            if t.neg {
                c = -c;
            }
            for (_, (w, d)) in t.word.linear_form(n)? {
                add_to(&mut out, w, &c * &d);
            }
        }
        Ok(out)
    }

    /// Rebuilds a side from an expanded form.
    pub fn from_form(form: &LinearForm) -> Side {
        let terms = form
            .values()
            .map(|(w, c)| {
                let lead_neg = c.terms().next_back().is_some_and(|(_, x)| x.is_negative());
                let (neg, c) = if lead_neg { (true, -c.clone()) } else { (false, c.clone()) };
                let coeff = if c.is_one() { None } else { Some(CoeffExpr::from_poly(&c)) };
                Term {
                    neg,
                    coeff,
                    word: w.clone(),
                }
            })
            .collect();
        Side { terms }
    }
}

impl Relation {
    /// `lhs - rhs` expanded with oriented brackets, with the overall sign
    /// fixed so that the first coefficient has a positive leading term.
    pub fn normal_form(&self, n: Option<i64>) -> Result<LinearForm> {
        let mut form = self.lhs.linear_form(n)?;
        for (_, (w, c)) in self.rhs.linear_form(n)? {
            add_to(&mut form, w, -c);
        }
        let flip = form
            .values()
            .next()
            .and_then(|(_, c)| c.terms().next_back().map(|(_, x)| x.is_negative()))
            .unwrap_or(false);
        if flip {
            for v in form.values_mut() {
                v.1 = -v.1.clone();
            }
        }
        Ok(form)
    }

    /// Both sides expanded and oriented, kept apart.
    pub fn canonical(&self, n: Option<i64>) -> Result<Relation> {
        Ok(Relation {
            lhs: Side::from_form(&self.lhs.linear_form(n)?),
            rhs: Side::from_form(&self.rhs.linear_form(n)?),
        })
    }
}
