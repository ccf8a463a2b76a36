//! The quantum coordinate algebra `SL_q(2)` on generators `a, b, c, d`:
//! parsing, rewriting to a normal basis, the coproduct, and the bialgebra,
//! counit and antipode checks.
//!
//! Rewrite rules:
//! `ba -> q ab`, `ca -> q ac`, `cb -> bc`, `cd -> q⁻¹ dc`, `bd -> q⁻¹ db`,
//! `ad -> 1 + q⁻¹ bc`, `da -> 1 + q bc`.
//! Normal words are `a^i b^j c^k` and `d^m b^j c^k`. Each rule lowers the pair
//! (number of `a`/`d` letters, inversions for the ranking `a = d < b < c`)
//! lexicographically, so rewriting terminates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use crate::ring::{LaurentScalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    fn rank(self) -> u8 {
        match self {
            Letter::A | Letter::D => 0,
            Letter::B => 1,
            Letter::C => 2,
        }
    }

    fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ch = match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        };
        write!(f, "{ch}")
    }
}

pub type NCWord = Vec<Letter>;

fn word_text(w: &[Letter]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `(number of a/d letters, inversions for the ranking a = d < b < c)`; each
/// rule application replaces a word by words with a lexicographically smaller measure.
pub fn termination_measure(w: &[Letter]) -> (usize, usize) {
    let ad = w
        .iter()
        .filter(|l| matches!(l, Letter::A | Letter::D))
        .count();
    let mut inversions = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i].rank() > w[j].rank() {
                inversions += 1;
            }
        }
    }
    (ad, inversions)
}

/// Deterministic display order: by length, then letters.
fn display_key(w: &NCWord) -> (usize, NCWord) {
    (w.len(), w.clone())
}

/// `Σ coeff · word` in the free algebra over `Z[v, v^-1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, LaurentScalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), LaurentScalar::one())
    }

    pub fn term(word: NCWord, coeff: LaurentScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(word, &coeff);
        p
    }

    pub fn letter(l: Letter) -> Self {
        Self::term(vec![l], LaurentScalar::one())
    }

    pub fn word(w: &[Letter]) -> Self {
        Self::term(w.to_vec(), LaurentScalar::one())
    }

    pub fn scalar(c: LaurentScalar) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn add_term(&mut self, word: NCWord, coeff: &LaurentScalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(word.clone())
            .or_insert_with(LaurentScalar::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Letter]) -> LaurentScalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(LaurentScalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &LaurentScalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * k));
        }
        out
    }

    /// Concatenation product in the free algebra.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }

    fn sorted_terms(&self) -> Vec<(&NCWord, &LaurentScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| display_key(w));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(w, c)| json!({"word": w.iter().map(ToString::to_string).collect::<String>(), "coeff": c.to_json()}))
                .collect(),
        )
    }
}

/// A Laurent coefficient written in `q` when all exponents of `v` are even.
fn q_text(c: &LaurentScalar) -> String {
    let even = c.terms().all(|(e, _)| e % 2 == 0);
    let mut parts: Vec<String> = Vec::new();
    for (e, k) in c.terms().collect::<Vec<_>>().into_iter().rev() {
        let (var, exp) = if even { ("q", e / 2) } else { ("v", e) };
        let mono = match exp {
            0 => String::new(),
            1 => var.to_string(),
            x => format!("{var}^{x}"),
        };
        let abs = if k < &num_bigint::BigInt::from(0) {
            -k.clone()
        } else {
            k.clone()
        };
        let body = match (mono.is_empty(), abs == num_bigint::BigInt::from(1)) {
            (true, _) => abs.to_string(),
            (false, true) => mono,
            (false, false) => format!("{abs} {mono}"),
        };
        let neg = k < &num_bigint::BigInt::from(0);
        if parts.is_empty() {
            parts.push(if neg { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if neg { "-" } else { "+" }));
        }
    }
    parts.join(" ")
}

fn term_text(w: &[Letter], c: &LaurentScalar) -> (bool, String) {
    let is_monomial = c.terms().count() == 1;
    if is_monomial {
        let neg = c
            .terms()
            .next()
            .is_some_and(|(_, k)| k < &num_bigint::BigInt::from(0));
        let abs = if neg { -c } else { c.clone() };
        let coeff = q_text(&abs);
        let text = match (w.is_empty(), coeff.as_str()) {
            (true, _) => coeff,
            (false, "1") => word_text(w),
            (false, _) => format!("{coeff} {}", word_text(w)),
        };
        (neg, text)
    } else if w.is_empty() {
        (false, format!("({})", q_text(c)))
    } else {
        (false, format!("({}) {}", q_text(c), word_text(w)))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, text) = term_text(w, c);
            match (i, neg) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QCoordsError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("rewrite step budget {budget} exceeded")]
    StepBudget { budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Letter(Letter),
    Scalar(LaurentScalar),
    Int(i64),
    Plus,
    Minus,
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, QCoordsError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: String| QCoordsError::Syntax { position, message };
    while i < chars.len() {
        let ch = chars[i];
        let start = i;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if let Some(l) = Letter::from_char(ch) {
            out.push((start, Token::Letter(l)));
            i += 1;
        } else if ch == 'q' || ch == 'v' {
            i += 1;
            let mut exp = 1i64;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let mut s = String::new();
                if matches!(chars.get(i), Some('-') | Some('−')) {
                    s.push('-');
                    i += 1;
                }
                let digits_start = i;
                while chars.get(i).is_some_and(char::is_ascii_digit) {
                    s.push(chars[i]);
                    i += 1;
                }
                if i == digits_start {
                    return Err(err(i, "expected an integer exponent".into()));
                }
                exp = s
                    .parse()
                    .map_err(|_| err(digits_start, "exponent out of range".into()))?;
            }
            let k = if ch == 'q' { 2 * exp } else { exp };
            out.push((start, Token::Scalar(LaurentScalar::v_pow(k))));
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while chars.get(i).is_some_and(char::is_ascii_digit) {
                s.push(chars[i]);
                i += 1;
            }
            let n = s
                .parse()
                .map_err(|_| err(start, "integer out of range".into()))?;
            out.push((start, Token::Int(n)));
        } else {
            let tok = match ch {
                '+' => Token::Plus,
                '-' | '−' => Token::Minus,
                '(' => Token::Open,
                ')' => Token::Close,
                other => return Err(err(start, format!("unexpected character {other:?}"))),
            };
            out.push((start, tok));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: &str) -> QCoordsError {
        QCoordsError::Syntax {
            position: self.here(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<NCPoly, QCoordsError> {
        let mut sign_neg = false;
        match self.peek() {
            Some(Token::Plus) => self.pos += 1,
            Some(Token::Minus) => {
                sign_neg = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if sign_neg { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly, QCoordsError> {
        let mut acc: Option<NCPoly> = None;
        loop {
            let factor = match self.peek() {
                Some(Token::Letter(l)) => NCPoly::letter(*l),
                Some(Token::Scalar(s)) => NCPoly::scalar(s.clone()),
                Some(Token::Int(n)) => NCPoly::scalar(LaurentScalar::from_int(*n)),
                Some(Token::Open) => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if self.peek() != Some(&Token::Close) {
                        return Err(self.error("expected ')'"));
                    }
                    inner
                }
                _ => break,
            };
            self.pos += 1;
            acc = Some(match acc {
                None => factor,
                Some(a) => a.mul(&factor),
            });
        }
        acc.ok_or_else(|| self.error("expected a factor"))
    }
}

/// Parses an expression such as `"a d - q^-1 b c"`; the result is not reduced.
pub fn parse_nc(text: &str) -> Result<NCPoly, QCoordsError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected token"));
    }
    Ok(out)
}

impl FromStr for NCPoly {
    type Err = QCoordsError;

    fn from_str(s: &str) -> Result<Self, QCoordsError> {
        parse_nc(s)
    }
}

/// A rule `xy -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: [Letter; 2],
    pub rhs: NCPoly,
}

/// A length-two rewrite system on the free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    pub rules: Vec<Rule>,
}

fn q(k: i64) -> LaurentScalar {
    LaurentScalar::q_pow(k)
}

impl RewriteSystem {
    pub fn standard() -> Self {
        use Letter::*;
        let mono = |c: LaurentScalar, w: &[Letter]| NCPoly::term(w.to_vec(), c);
        let rules = vec![
            Rule {
                lhs: [B, A],
                rhs: mono(q(1), &[A, B]),
            },
            Rule {
                lhs: [C, A],
                rhs: mono(q(1), &[A, C]),
            },
            Rule {
                lhs: [C, B],
                rhs: mono(LaurentScalar::one(), &[B, C]),
            },
            Rule {
                lhs: [C, D],
                rhs: mono(q(-1), &[D, C]),
            },
            Rule {
                lhs: [B, D],
                rhs: mono(q(-1), &[D, B]),
            },
            Rule {
                lhs: [A, D],
                rhs: NCPoly::one().add(&mono(q(-1), &[B, C])),
            },
            Rule {
                lhs: [D, A],
                rhs: NCPoly::one().add(&mono(q(1), &[B, C])),
            },
        ];
        Self { rules }
    }

    fn rule_for(&self, x: Letter, y: Letter) -> Option<&Rule> {
        self.rules.iter().find(|r| r.lhs == [x, y])
    }

    fn first_redex(&self, w: &[Letter]) -> Option<(usize, &Rule)> {
        w.windows(2)
            .enumerate()
            .find_map(|(i, p)| self.rule_for(p[0], p[1]).map(|r| (i, r)))
    }

    pub fn is_normal_word(&self, w: &[Letter]) -> bool {
        self.first_redex(w).is_none()
    }

    /// Reduces to normal form, counting single rule applications.
    pub fn normal_form_counted(
        &self,
        p: &NCPoly,
        budget: usize,
    ) -> Result<(NCPoly, usize), QCoordsError> {
        let mut out = NCPoly::zero();
        let mut pending: Vec<(NCWord, LaurentScalar)> =
            p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop() {
            match self.first_redex(&w) {
                None => out.add_term(w, &c),
                Some((i, rule)) => {
                    steps += 1;
                    if steps > budget {
                        return Err(QCoordsError::StepBudget { budget });
                    }
                    for (mid, k) in rule.rhs.terms() {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(mid);
                        nw.extend_from_slice(&w[i + 2..]);
                        pending.push((nw, &c * k));
                    }
                }
            }
        }
        Ok((out, steps))
    }

    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        self.normal_form_counted(p, usize::MAX)
            .expect("unbounded budget")
            .0
    }

    /// Every overlap `xyz` with `xy` and `yz` both left-hand sides resolves to a
    /// common normal form.
    pub fn check_overlaps(&self) -> Result<usize, OverlapFailure> {
        let mut count = 0;
        for r1 in &self.rules {
            for r2 in &self.rules {
                if r1.lhs[1] != r2.lhs[0] {
                    continue;
                }
                let (x, z) = (r1.lhs[0], r2.lhs[1]);
                let left = self.normal_form(&r1.rhs.mul(&NCPoly::letter(z)));
                let right = self.normal_form(&NCPoly::letter(x).mul(&r2.rhs));
                count += 1;
                if left != right {
                    return Err(OverlapFailure {
                        word: vec![x, r1.lhs[1], z],
                        left,
                        right,
                    });
                }
            }
        }
        Ok(count)
    }

    /// Reduces each tensor component.
    pub fn normal_form_tensor(&self, t: &NCPolyTensor) -> NCPolyTensor {
        let mut out = NCPolyTensor::default();
        for ((l, r), c) in &t.terms {
            let nl = self.normal_form(&NCPoly::word(l));
            let nr = self.normal_form(&NCPoly::word(r));
            for (wl, cl) in nl.terms() {
                for (wr, cr) in nr.terms() {
                    out.add_term(wl.clone(), wr.clone(), &(c * &(cl * cr)));
                }
            }
        }
        out
    }
}

/// Reduces with the standard rules.
pub fn normal_form(p: &NCPoly) -> NCPoly {
    RewriteSystem::standard().normal_form(p)
}

/// Local confluence of the standard rules.
pub fn check_overlaps() -> Result<usize, OverlapFailure> {
    RewriteSystem::standard().check_overlaps()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("overlap {} resolves to {left} and {right}", word_text(.word))]
pub struct OverlapFailure {
    pub word: NCWord,
    pub left: NCPoly,
    pub right: NCPoly,
}

/// `Σ coeff · left ⊗ right`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPolyTensor {
    terms: BTreeMap<(NCWord, NCWord), LaurentScalar>,
}

impl NCPolyTensor {
    pub fn one() -> Self {
        let mut t = Self::default();
        t.add_term(Vec::new(), Vec::new(), &LaurentScalar::one());
        t
    }

    pub fn add_term(&mut self, l: NCWord, r: NCWord, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(LaurentScalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(NCWord, NCWord), &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &NCPolyTensor) -> NCPolyTensor {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: &LaurentScalar) -> NCPolyTensor {
        let mut out = NCPolyTensor::default();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), &(c * k));
        }
        out
    }

    /// `(l1 ⊗ r1)(l2 ⊗ r2) = l1 l2 ⊗ r1 r2`.
    pub fn mul(&self, other: &NCPolyTensor) -> NCPolyTensor {
        let mut out = NCPolyTensor::default();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let mut l = l1.clone();
                l.extend_from_slice(l2);
                let mut r = r1.clone();
                r.extend_from_slice(r2);
                out.add_term(l, r, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for NCPolyTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|((l, r), _)| (l.len() + r.len(), l.clone(), r.clone()));
        for (i, ((l, r), c)) in terms.into_iter().enumerate() {
            let body = format!("{} ⊗ {}", word_text(l), word_text(r));
            let (neg, coeff) = term_text(&[], c);
            let text = if coeff == "1" {
                body
            } else {
                format!("{coeff} {body}")
            };
            match (i, neg) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}

/// `Δ` on a generator: `Δ(Y) = Y ⊗ Y` for `Y = [[a, b], [c, d]]`.
pub fn coproduct_letter(l: Letter) -> NCPolyTensor {
    use Letter::*;
    let pairs: [(Letter, Letter); 2] = match l {
        A => [(A, A), (B, C)],
        B => [(A, B), (B, D)],
        C => [(C, A), (D, C)],
        D => [(C, B), (D, D)],
    };
    let mut t = NCPolyTensor::default();
    for (x, y) in pairs {
        t.add_term(vec![x], vec![y], &LaurentScalar::one());
    }
    t
}

/// `Δ` extended multiplicatively, without reduction.
pub fn coproduct_raw(p: &NCPoly) -> NCPolyTensor {
    let mut out = NCPolyTensor::default();
    for (w, c) in p.terms() {
        let t = w
            .iter()
            .fold(NCPolyTensor::one(), |acc, l| acc.mul(&coproduct_letter(*l)));
        out = out.add(&t.scale(c));
    }
    out
}

/// `Δ(p)` reduced componentwise.
pub fn coproduct(p: &NCPoly) -> NCPolyTensor {
    RewriteSystem::standard().normal_form_tensor(&coproduct_raw(p))
}

/// A defining relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
}

impl Relation {
    pub fn parse(name: &str, lhs: &str, rhs: &str) -> Self {
        Self {
            name: name.into(),
            lhs: parse_nc(lhs).expect("static relation"),
            rhs: parse_nc(rhs).expect("static relation"),
        }
    }

    pub fn residue(&self) -> NCPoly {
        self.lhs.sub(&self.rhs)
    }
}

/// The seven relations of `SL_q(2)`.
pub fn standard_relations() -> Vec<Relation> {
    vec![
        Relation::parse("ab = q^-1 ba", "a b", "q^-1 b a"),
        Relation::parse("ac = q^-1 ca", "a c", "q^-1 c a"),
        Relation::parse("bc = cb", "b c", "c b"),
        Relation::parse("cd = q^-1 dc", "c d", "q^-1 d c"),
        Relation::parse("bd = q^-1 db", "b d", "q^-1 d b"),
        Relation::parse("ad - da = (q^-1 - q) bc", "a d - d a", "(q^-1 - q) b c"),
        Relation::parse("ad - q^-1 bc = 1", "a d - q^-1 b c", "1"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("relation {relation}: residue {residue}")]
pub struct ResidueFailure {
    pub relation: String,
    pub residue: String,
}

/// `Δ(lhs) - Δ(rhs)` reduces to zero in `A ⊗ A` for each relation.
pub fn check_bialgebra_with(
    rules: &RewriteSystem,
    relations: &[Relation],
) -> Result<(), ResidueFailure> {
    for r in relations {
        let residue = rules.normal_form_tensor(&coproduct_raw(&r.residue()));
        if !residue.is_zero() {
            return Err(ResidueFailure {
                relation: r.name.clone(),
                residue: residue.to_string(),
            });
        }
    }
    Ok(())
}

pub fn check_bialgebra() -> Result<(), ResidueFailure> {
    check_bialgebra_with(&RewriteSystem::standard(), &standard_relations())
}

/// `ε(a) = ε(d) = 1`, `ε(b) = ε(c) = 0`, extended multiplicatively.
pub fn counit(p: &NCPoly) -> LaurentScalar {
    let mut acc = LaurentScalar::zero();
    for (w, c) in p.terms() {
        if w.iter().all(|l| matches!(l, Letter::A | Letter::D)) {
            acc = &acc + c;
        }
    }
    acc
}

/// `S(a) = d`, `S(d) = a`, `S(b) = -q b`, `S(c) = -q⁻¹ c`.
pub fn antipode_letter(l: Letter) -> NCPoly {
    match l {
        Letter::A => NCPoly::letter(Letter::D),
        Letter::D => NCPoly::letter(Letter::A),
        Letter::B => NCPoly::term(vec![Letter::B], -q(1)),
        Letter::C => NCPoly::term(vec![Letter::C], -q(-1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CounitAntipodeFailure {
    #[error("counit does not kill relation {relation}: {value}")]
    Counit { relation: String, value: String },
    #[error("{side} on {generator} gives {value}, expected {expected}")]
    Antipode {
        generator: Letter,
        side: &'static str,
        value: String,
        expected: String,
    },
}

/// The counit kills every relation and both antipode composites equal `ηε` on generators.
pub fn counit_antipode_check() -> Result<(), CounitAntipodeFailure> {
    let rules = RewriteSystem::standard();
    for r in standard_relations() {
        let value = counit(&r.residue());
        if !value.is_zero() {
            return Err(CounitAntipodeFailure::Counit {
                relation: r.name,
                value: value.to_string(),
            });
        }
    }
    for g in Letter::ALL {
        let expected = NCPoly::scalar(counit(&NCPoly::letter(g)));
        let delta = coproduct_raw(&NCPoly::letter(g));
        let mut left = NCPoly::zero();
        let mut right = NCPoly::zero();
        for ((l, r), c) in delta.terms() {
            let (x, y) = (l[0], r[0]);
            left = left.add(&antipode_letter(x).mul(&NCPoly::letter(y)).scale(c));
            right = right.add(&NCPoly::letter(x).mul(&antipode_letter(y)).scale(c));
        }
        for (side, value) in [("m(S ⊗ id)Δ", left), ("m(id ⊗ S)Δ", right)] {
            let value = rules.normal_form(&value);
            if value != expected {
                return Err(CounitAntipodeFailure::Antipode {
                    generator: g,
                    side,
                    value: value.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str) -> String {
        normal_form(&parse_nc(s).unwrap()).to_string()
    }

    #[test]
    fn parsing() {
        let p = parse_nc("b a").unwrap();
        assert_eq!(p, NCPoly::word(&[Letter::B, Letter::A]));
        assert_eq!(parse_nc("a d - q^-1 b c").unwrap().len(), 2);
        assert_eq!(
            parse_nc("x y").unwrap_err(),
            QCoordsError::Syntax {
                position: 0,
                message: "unexpected character 'x'".into()
            }
        );
        assert!(matches!(
            parse_nc("a +").unwrap_err(),
            QCoordsError::Syntax { position: 3, .. }
        ));
        assert!(matches!(
            parse_nc("(a b").unwrap_err(),
            QCoordsError::Syntax { position: 4, .. }
        ));
        assert!(matches!(
            parse_nc("q^x").unwrap_err(),
            QCoordsError::Syntax { position: 2, .. }
        ));
        assert_eq!(
            parse_nc("2 v^3 a").unwrap(),
            NCPoly::term(
                vec![Letter::A],
                LaurentScalar::from_int(2) * LaurentScalar::v_pow(3)
            )
        );
        assert_eq!(parse_nc("−a").unwrap(), NCPoly::letter(Letter::A).neg());
    }

    #[test]
    fn rewriting_examples() {
        assert_eq!(nf("b a"), "q a b");
        assert_eq!(nf("a d"), "1 + q^-1 b c");
        assert_eq!(nf("d a"), "1 + q b c");
        assert_eq!(nf("c b a"), "q^2 a b c");
        assert_eq!(nf("a d - q^-1 b c"), "1");
        assert_eq!(nf("b a - b a"), "0");
        assert_eq!(nf("(q + q^-1) a"), "(q + q^-1) a");
        assert_eq!(nf("-q b"), "-q b");
    }

    #[test]
    fn overlaps_resolve() {
        let n = check_overlaps().unwrap();
        assert!(n > 0);
    }

    #[test]
    fn literal_orientation_is_not_confluent() {
        use Letter::*;
        let mut sys = RewriteSystem::standard();
        for r in sys.rules.iter_mut() {
            if r.lhs == [C, D] {
                *r = Rule {
                    lhs: [D, C],
                    rhs: NCPoly::term(vec![C, D], q(1)),
                };
            }
            if r.lhs == [B, D] {
                *r = Rule {
                    lhs: [D, B],
                    rhs: NCPoly::term(vec![B, D], q(1)),
                };
            }
        }
        let f = sys.check_overlaps().unwrap_err();
        assert_eq!(f.word.len(), 3);
        assert!(!sys.is_normal_word(&[D, B]) && sys.is_normal_word(&[A, B, D]));
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            coproduct(&NCPoly::letter(Letter::A)).to_string(),
            "a ⊗ a + b ⊗ c"
        );
        assert_eq!(
            coproduct(&NCPoly::letter(Letter::B)).to_string(),
            "a ⊗ b + b ⊗ d"
        );
        assert_eq!(coproduct(&NCPoly::one()), NCPolyTensor::one());
    }

    #[test]
    fn bialgebra() {
        check_bialgebra().unwrap();
        for r in standard_relations() {
            assert!(normal_form(&r.residue()).is_zero(), "{}", r.name);
        }
        let wrong = vec![Relation::parse("ab = q ba", "a b", "q b a")];
        let f = check_bialgebra_with(&RewriteSystem::standard(), &wrong).unwrap_err();
        assert_eq!(f.relation, "ab = q ba");
    }

    #[test]
    fn counit_and_antipode() {
        counit_antipode_check().unwrap();
        assert!(counit(&parse_nc("a d - q^-1 b c - 1").unwrap()).is_zero());
        let s_a = parse_nc("d a - q b c").unwrap();
        assert_eq!(normal_form(&s_a), NCPoly::one());
        let b_side = parse_nc("-q a b + b a").unwrap();
        assert!(normal_form(&b_side).is_zero());
    }

    #[test]
    fn rules_decrease_the_measure() {
        for r in RewriteSystem::standard().rules {
            let before = termination_measure(&r.lhs);
            for (w, _) in r.rhs.terms() {
                assert!(termination_measure(w) < before, "{:?}", r.lhs);
            }
        }
    }

    #[test]
    fn step_counts() {
        let sys = RewriteSystem::standard();
        let (p, steps) = sys
            .normal_form_counted(&parse_nc("d c b a").unwrap(), 1000)
            .unwrap();
        assert!(steps > 0);
        assert!(p.terms().all(|(w, _)| sys.is_normal_word(w)));
        assert_eq!(
            sys.normal_form_counted(&parse_nc("d c b a").unwrap(), 1)
                .unwrap_err(),
            QCoordsError::StepBudget { budget: 1 }
        );
    }
}
