//! Sliced (Morse) diagrams of colored framed links: parsing, signature
//! validation, evaluation by a left-to-right sweep, braid closures and
//! framing correction.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::ribbon::{
    braiding, duality, quantum_dim, twist_generic, BraidWord, CrossingSign, DualityKind,
    Orientation, Signature, Strand,
};
use crate::ring::{
    find_truncation_level, CycloScalar, Cyclotomic, LaurentScalar, RingError, Scalar, ScalarRing,
};
use crate::uqsl2::DEFAULT_DIM_CAP;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("position {pos} out of range at event {event} (signature has {len} strands)")]
    PositionOutOfRange {
        event: usize,
        pos: usize,
        len: usize,
    },
    #[error("orientation mismatch at event {event}: {detail}")]
    OrientationMismatch { event: usize, detail: String },
    #[error("color mismatch at event {event}: {left} vs {right}")]
    ColorMismatch { event: usize, left: u32, right: u32 },
    #[error("nonempty final signature {0}")]
    NonemptyFinalSignature(Signature),
    #[error("component count mismatch: declared {declared}, found {found}")]
    ComponentCount { declared: usize, found: usize },
    #[error("component {component} declared color {declared} but is drawn with color {drawn}")]
    ComponentColor {
        component: usize,
        declared: u32,
        drawn: u32,
    },
    #[error("arity mismatch: word uses s{index} but only {strands} strands are colored")]
    Arity { index: usize, strands: usize },
    #[error("dimension cap exceeded at event {event}: {dim} > {cap}")]
    DimensionCap {
        event: usize,
        dim: usize,
        cap: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// One Morse move. Positions index the current signature from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// Inserts `(n↑, n↓)` at `pos` via the plain coevaluation.
    Cup {
        pos: usize,
        color: u32,
    },
    /// Inserts `(n↓, n↑)` at `pos` via the pivotal coevaluation.
    CupStar {
        pos: usize,
        color: u32,
    },
    /// Consumes `(n↑, n↓)` via the pivotal evaluation.
    Cap {
        pos: usize,
    },
    /// Consumes `(n↓, n↑)` via the plain evaluation.
    CapStar {
        pos: usize,
    },
    CrossPos {
        pos: usize,
    },
    CrossNeg {
        pos: usize,
    },
}

impl Event {
    pub fn pos(&self) -> usize {
        match *self {
            Event::Cup { pos, .. }
            | Event::CupStar { pos, .. }
            | Event::Cap { pos }
            | Event::CapStar { pos }
            | Event::CrossPos { pos }
            | Event::CrossNeg { pos } => pos,
        }
    }

    /// Strand positions `[lo, hi)` touched in the signature before the event.
    pub fn input_range(&self) -> (usize, usize) {
        let p = self.pos();
        match self {
            Event::Cup { .. } | Event::CupStar { .. } => (p, p),
            _ => (p, p + 2),
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Cup { pos, color } => write!(f, "cup {pos} {color}"),
            Event::CupStar { pos, color } => write!(f, "cup* {pos} {color}"),
            Event::Cap { pos } => write!(f, "cap {pos}"),
            Event::CapStar { pos } => write!(f, "cap* {pos}"),
            Event::CrossPos { pos } => write!(f, "x+ {pos}"),
            Event::CrossNeg { pos } => write!(f, "x- {pos}"),
        }
    }
}

/// An event list with an optional component header.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlicedDiagram {
    pub components: Option<usize>,
    /// Declared `(component, color)` pairs.
    pub colors: Vec<(usize, u32)>,
    pub events: Vec<Event>,
}

impl SlicedDiagram {
    pub fn new(events: Vec<Event>) -> Self {
        Self {
            components: None,
            colors: Vec::new(),
            events,
        }
    }

    /// Side-by-side union: `other` is drawn to the right of `self`.
    pub fn disjoint_union(&self, other: &SlicedDiagram) -> SlicedDiagram {
        let mut events = self.events.clone();
        events.extend(other.events.iter().copied());
        let offset = self.components.unwrap_or(0);
        let components = match (self.components, other.components) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let mut colors = self.colors.clone();
        if components.is_some() {
            colors.extend(other.colors.iter().map(|(j, c)| (j + offset, *c)));
        }
        SlicedDiagram {
            components,
            colors,
            events,
        }
    }
}

impl fmt::Display for SlicedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.components {
            writeln!(f, "components {k}")?;
        }
        for (j, c) in &self.colors {
            writeln!(f, "color {j} {c}")?;
        }
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for SlicedDiagram {
    type Err = LinkError;

    fn from_str(text: &str) -> Result<Self, LinkError> {
        parse_diagram(text)
    }
}

/// Parses the `.sld` line format.
pub fn parse_diagram(text: &str) -> Result<SlicedDiagram, LinkError> {
    let mut d = SlicedDiagram::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| LinkError::Parse { line, message };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (keyword, args) = (tokens[0], &tokens[1..]);
        let arity = |n: usize| -> Result<(), LinkError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!(
                    "{keyword:?} takes {n} argument(s), found {}",
                    args.len()
                )))
            }
        };
        let number = |i: usize| -> Result<usize, LinkError> {
            args[i].parse::<usize>().map_err(|_| {
                err(format!(
                    "expected a nonnegative integer, found {:?}",
                    args[i]
                ))
            })
        };
        let color = |i: usize| -> Result<u32, LinkError> {
            args[i]
                .parse::<u32>()
                .map_err(|_| err(format!("expected a color, found {:?}", args[i])))
        };
        match keyword {
            "components" => {
                arity(1)?;
                if d.components.is_some() {
                    return Err(err("duplicate components header".into()));
                }
                d.components = Some(number(0)?);
            }
            "color" => {
                arity(2)?;
                d.colors.push((number(0)?, color(1)?));
            }
            "cup" => {
                arity(2)?;
                d.events.push(Event::Cup {
                    pos: number(0)?,
                    color: color(1)?,
                });
            }
            "cup*" => {
                arity(2)?;
                d.events.push(Event::CupStar {
                    pos: number(0)?,
                    color: color(1)?,
                });
            }
            "cap" => {
                arity(1)?;
                d.events.push(Event::Cap { pos: number(0)? });
            }
            "cap*" => {
                arity(1)?;
                d.events.push(Event::CapStar { pos: number(0)? });
            }
            "x+" => {
                arity(1)?;
                d.events.push(Event::CrossPos { pos: number(0)? });
            }
            "x-" => {
                arity(1)?;
                d.events.push(Event::CrossNeg { pos: number(0)? });
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    Ok(d)
}

/// One closed component after validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub color: u32,
    /// Sum of crossing signs between strands of this component (blackboard framing).
    pub writhe: i64,
    /// Indices of the cup events that open arcs of this component.
    pub cups: Vec<usize>,
}

/// The slice signatures and the component structure of a valid diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub signatures: Vec<Signature>,
    pub components: Vec<Component>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
    }
}

/// Validates and returns the full sequence of slice signatures.
pub fn validate(d: &SlicedDiagram) -> Result<Vec<Signature>, LinkError> {
    analyze(d).map(|a| a.signatures)
}

/// Validates and recovers components, their colors and self-writhes.
///
/// Events are numbered from 1 in error messages. Components are ordered by
/// their first cup.
pub fn analyze(d: &SlicedDiagram) -> Result<Analysis, LinkError> {
    let mut sig: Vec<Strand> = Vec::new();
    // arc id per strand; one arc per cup
    let mut arcs: Vec<usize> = Vec::new();
    let mut uf = UnionFind(Vec::new());
    let mut arc_cup: Vec<(usize, u32)> = Vec::new();
    let mut crossings: Vec<(usize, usize, i64)> = Vec::new();
    let mut signatures = vec![Signature::empty()];
    for (i, ev) in d.events.iter().enumerate() {
        let event = i + 1;
        let len = sig.len();
        let (lo, hi) = ev.input_range();
        let in_range = match ev {
            Event::Cup { .. } | Event::CupStar { .. } => lo <= len,
            _ => hi <= len,
        };
        if !in_range {
            return Err(LinkError::PositionOutOfRange {
                event,
                pos: ev.pos(),
                len,
            });
        }
        match *ev {
            Event::Cup { pos, color } | Event::CupStar { pos, color } => {
                let arc = uf.add();
                arc_cup.push((i, color));
                let pair = if matches!(ev, Event::Cup { .. }) {
                    [Strand::up(color), Strand::down(color)]
                } else {
                    [Strand::down(color), Strand::up(color)]
                };
                sig.splice(pos..pos, pair);
                arcs.splice(pos..pos, [arc, arc]);
            }
            Event::Cap { pos } | Event::CapStar { pos } => {
                let (a, b) = (sig[pos], sig[pos + 1]);
                let want = if matches!(ev, Event::Cap { .. }) {
                    (Orientation::Up, Orientation::Down)
                } else {
                    (Orientation::Down, Orientation::Up)
                };
                if (a.orientation, b.orientation) != want {
                    let name = if matches!(ev, Event::Cap { .. }) {
                        "cap"
                    } else {
                        "cap*"
                    };
                    return Err(LinkError::OrientationMismatch {
                        event,
                        detail: format!("{name} needs {want:?}, found {a}{b}"),
                    });
                }
                if a.color != b.color {
                    return Err(LinkError::ColorMismatch {
                        event,
                        left: a.color,
                        right: b.color,
                    });
                }
                uf.union(arcs[pos], arcs[pos + 1]);
                sig.drain(pos..pos + 2);
                arcs.drain(pos..pos + 2);
            }
            Event::CrossPos { pos } | Event::CrossNeg { pos } => {
                let (a, b) = (sig[pos], sig[pos + 1]);
                if a.orientation != Orientation::Up || b.orientation != Orientation::Up {
                    return Err(LinkError::OrientationMismatch {
                        event,
                        detail: format!("crossings join two upward strands, found {a}{b}"),
                    });
                }
                let sign = if matches!(ev, Event::CrossPos { .. }) {
                    1
                } else {
                    -1
                };
                crossings.push((arcs[pos], arcs[pos + 1], sign));
                sig.swap(pos, pos + 1);
                arcs.swap(pos, pos + 1);
            }
        }
        signatures.push(Signature(sig.clone()));
    }
    if !sig.is_empty() {
        return Err(LinkError::NonemptyFinalSignature(Signature(sig)));
    }

    let mut roots: Vec<usize> = Vec::new();
    for arc in 0..arc_cup.len() {
        let r = uf.find(arc);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let mut components: Vec<Component> = roots
        .iter()
        .map(|&r| Component {
            color: arc_cup[r].1,
            writhe: 0,
            cups: Vec::new(),
        })
        .collect();
    for arc in 0..arc_cup.len() {
        let r = uf.find(arc);
        let idx = roots.iter().position(|&x| x == r).expect("root recorded");
        components[idx].cups.push(arc_cup[arc].0);
    }
    for (a, b, sign) in crossings {
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra == rb {
            let idx = roots.iter().position(|&x| x == ra).expect("root recorded");
            components[idx].writhe += sign;
        }
    }
    if let Some(declared) = d.components {
        if declared != components.len() {
            return Err(LinkError::ComponentCount {
                declared,
                found: components.len(),
            });
        }
    }
    for &(j, declared) in &d.colors {
        let Some(c) = components.get(j) else {
            return Err(LinkError::ComponentCount {
                declared: d.components.unwrap_or(j + 1),
                found: components.len(),
            });
        };
        if c.color != declared {
            return Err(LinkError::ComponentColor {
                component: j,
                declared,
                drawn: c.color,
            });
        }
    }
    Ok(Analysis {
        signatures,
        components,
    })
}

/// `out = (id_L ⊗ mat ⊗ id_R) vec`.
fn apply_local<S: Scalar>(
    vec: &[S],
    left: usize,
    right: usize,
    mat: &Matrix<S>,
    zero: &S,
) -> Vec<S> {
    let (m_in, m_out) = (mat.cols(), mat.rows());
    debug_assert_eq!(vec.len(), left * m_in * right);
    let mut out = vec![zero.clone(); left * m_out * right];
    for l in 0..left {
        for (i, j, x) in mat.entries() {
            let src = (l * m_in + j) * right;
            let dst = (l * m_out + i) * right;
            for r in 0..right {
                let y = &vec[src + r];
                if !y.is_zero() {
                    out[dst + r].add_assign_ref(&x.mul_ref(y));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum LocalKey {
    Duality(u32, DualityKindKey),
    Cross(u32, u32, bool),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum DualityKindKey {
    Ev,
    Coev,
    EvPivotal,
    CoevPivotal,
}

impl From<DualityKindKey> for DualityKind {
    fn from(k: DualityKindKey) -> Self {
        match k {
            DualityKindKey::Ev => DualityKind::Ev,
            DualityKindKey::Coev => DualityKind::Coev,
            DualityKindKey::EvPivotal => DualityKind::EvPivotal,
            DualityKindKey::CoevPivotal => DualityKind::CoevPivotal,
        }
    }
}

/// Evaluates a diagram with the default dimension cap.
pub fn evaluate<R: ScalarRing>(ring: &R, d: &SlicedDiagram) -> Result<R::Elem, LinkError> {
    evaluate_with_cap(ring, d, DEFAULT_DIM_CAP)
}

/// Sweeps the diagram bottom to top, carrying a vector in the current slice object.
pub fn evaluate_with_cap<R: ScalarRing>(
    ring: &R,
    d: &SlicedDiagram,
    cap: usize,
) -> Result<R::Elem, LinkError> {
    let analysis = analyze(d)?;
    let zero = ring.zero();
    let mut cache: HashMap<LocalKey, Matrix<R::Elem>> = HashMap::new();
    let mut state = vec![ring.one()];
    for (i, ev) in d.events.iter().enumerate() {
        let before = &analysis.signatures[i];
        let after = &analysis.signatures[i + 1];
        let dim = after.dim();
        if dim > cap {
            return Err(LinkError::DimensionCap {
                event: i + 1,
                dim,
                cap,
            });
        }
        let (lo, hi) = ev.input_range();
        let key = match *ev {
            Event::Cup { color, .. } => LocalKey::Duality(color, DualityKindKey::Coev),
            Event::CupStar { color, .. } => LocalKey::Duality(color, DualityKindKey::CoevPivotal),
            Event::Cap { pos } => LocalKey::Duality(before.0[pos].color, DualityKindKey::EvPivotal),
            Event::CapStar { pos } => LocalKey::Duality(before.0[pos].color, DualityKindKey::Ev),
            Event::CrossPos { pos } => {
                LocalKey::Cross(before.0[pos].color, before.0[pos + 1].color, true)
            }
            Event::CrossNeg { pos } => {
                LocalKey::Cross(before.0[pos].color, before.0[pos + 1].color, false)
            }
        };
        let mat = cache.entry(key).or_insert_with(|| match key {
            LocalKey::Duality(n, kind) => duality(ring, n, kind.into()).matrix,
            LocalKey::Cross(a, b, pos) => {
                let sign = if pos {
                    CrossingSign::Positive
                } else {
                    CrossingSign::Negative
                };
                braiding(ring, a, b, sign).matrix
            }
        });
        let left = before.slice(0, lo).dim();
        let right = before.slice(hi, before.len()).dim();
        state = apply_local(&state, left, right, mat, &zero);
    }
    Ok(state
        .into_iter()
        .next()
        .expect("final slice is the unit object"))
}

/// Closure of a braid on upward strands: nested `cup*` pairs on the left, the
/// braid acting on the upward block, then `cap*` pairs.
///
/// The upward strands occupy positions `k..2k`, and the rightmost generator of
/// the word is drawn first, so evaluation equals the quantum trace of
/// [`crate::ribbon::braid_rep`].
pub fn braid_closure(word: &BraidWord, colors: &[u32]) -> Result<SlicedDiagram, LinkError> {
    let k = colors.len();
    if let Some(g) = word.0.iter().find(|g| g.index >= k) {
        return Err(LinkError::Arity {
            index: g.index,
            strands: k,
        });
    }
    let mut events = Vec::with_capacity(2 * k + word.0.len());
    for i in 0..k {
        events.push(Event::CupStar {
            pos: i,
            color: colors[k - 1 - i],
        });
    }
    for g in word.0.iter().rev() {
        let pos = k + g.index - 1;
        events.push(match g.sign {
            CrossingSign::Positive => Event::CrossPos { pos },
            CrossingSign::Negative => Event::CrossNeg { pos },
        });
    }
    for i in (0..k).rev() {
        events.push(Event::CapStar { pos: i });
    }
    let mut d = SlicedDiagram::new(events);
    let analysis = analyze(&d)?;
    d.components = Some(analysis.components.len());
    d.colors = analysis
        .components
        .iter()
        .enumerate()
        .map(|(j, c)| (j, c.color))
        .collect();
    Ok(d)
}

/// Multiplies by `Π twist(color_j)^(-writhe_j)`.
pub fn framing_normalize<R: ScalarRing>(
    ring: &R,
    x: &R::Elem,
    writhes: &[i64],
    colors: &[u32],
) -> R::Elem {
    assert_eq!(writhes.len(), colors.len(), "one writhe per component");
    let exponent: i64 = writhes
        .iter()
        .zip(colors)
        .map(|(w, c)| {
            let t = twist_generic(*c);
            -w * t.min_degree().expect("twist is a monomial")
        })
        .sum();
    x.mul_ref(&ring.v_pow(exponent))
}

/// Evaluates and removes the framing dependence.
pub fn evaluate_normalized<R: ScalarRing>(
    ring: &R,
    d: &SlicedDiagram,
) -> Result<R::Elem, LinkError> {
    let analysis = analyze(d)?;
    let value = evaluate(ring, d)?;
    let writhes: Vec<i64> = analysis.components.iter().map(|c| c.writhe).collect();
    let colors: Vec<u32> = analysis.components.iter().map(|c| c.color).collect();
    Ok(framing_normalize(ring, &value, &writhes, &colors))
}

/// Replaces the color of every component.
pub fn recolor(d: &SlicedDiagram, coloring: &[u32]) -> Result<SlicedDiagram, LinkError> {
    let analysis = analyze(&SlicedDiagram::new(d.events.clone()))?;
    if coloring.len() != analysis.components.len() {
        return Err(LinkError::ComponentCount {
            declared: coloring.len(),
            found: analysis.components.len(),
        });
    }
    let mut events = d.events.clone();
    for (comp, &c) in analysis.components.iter().zip(coloring) {
        for &i in &comp.cups {
            match &mut events[i] {
                Event::Cup { color, .. } | Event::CupStar { color, .. } => *color = c,
                _ => unreachable!("component arcs start at cups"),
            }
        }
    }
    Ok(SlicedDiagram {
        components: Some(coloring.len()),
        colors: coloring.iter().copied().enumerate().collect(),
        events,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weighting {
    Plain,
    QDim,
}

impl FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Weighting::Plain),
            "qdim" => Ok(Weighting::QDim),
            other => Err(format!(
                "unknown weighting {other:?} (expected plain or qdim)"
            )),
        }
    }
}

/// Sum over all colorings of the components by `0..=ℓ-2`, evaluated at a
/// primitive `m`-th root of unity. Terms are computed in parallel and added in
/// lexicographic order of the coloring.
pub fn colored_sum(
    d: &SlicedDiagram,
    m: u32,
    weighting: Weighting,
) -> Result<CycloScalar, LinkError> {
    let level = find_truncation_level(m)?;
    let ring = Cyclotomic::new(m)?;
    let k = analyze(&SlicedDiagram::new(d.events.clone()))?
        .components
        .len();
    let colors_per = level - 1;
    let total = (colors_per as usize).pow(k as u32);
    let colorings: Vec<Vec<u32>> = (0..total)
        .map(|mut idx| {
            let mut c = vec![0u32; k];
            for slot in c.iter_mut().rev() {
                *slot = (idx % colors_per as usize) as u32;
                idx /= colors_per as usize;
            }
            c
        })
        .collect();
    let terms: Vec<Result<CycloScalar, LinkError>> = colorings
        .par_iter()
        .map(|c| {
            let value = evaluate(&ring, &recolor(d, c)?)?;
            Ok(match weighting {
                Weighting::Plain => value,
                Weighting::QDim => c
                    .iter()
                    .fold(value, |acc, n| acc.mul_ref(&quantum_dim(&ring, *n))),
            })
        })
        .collect();
    let mut sum = ring.zero();
    for t in terms {
        sum.add_assign_ref(&t?);
    }
    Ok(sum)
}

/// Convenience for the generic ring.
pub fn evaluate_generic(d: &SlicedDiagram) -> Result<LaurentScalar, LinkError> {
    evaluate(&crate::ring::Generic, d)
}
