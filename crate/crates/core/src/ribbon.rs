//! Balanced tensor structure on `U_q(sl2)` modules: braiding, twist, the four
//! duality morphisms, braid-group representations, and the axiom checks.
//!
//! Tensor products are concrete Kronecker products, so associators are
//! identities. Structural morphisms are built over `Z[v, v^-1]` and embedded
//! into the target ring.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::ring::{quantum_factorial, Generic, LaurentScalar, Scalar, ScalarRing};
use crate::uqsl2::{dual_action, make_rep, tensor_pair, Action};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch {
        expected: Signature,
        found: Signature,
    },
    #[error("braid generator s{index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("bad braid token {token:?} at position {position}")]
    BadBraidToken { token: String, position: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Up,
    Down,
}

/// A strand in a slice: `Up` carries `V_n`, `Down` carries `V_n*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub color: u32,
    pub orientation: Orientation,
}

impl Strand {
    pub fn up(color: u32) -> Self {
        Self {
            color,
            orientation: Orientation::Up,
        }
    }

    pub fn down(color: u32) -> Self {
        Self {
            color,
            orientation: Orientation::Down,
        }
    }

    pub fn dim(&self) -> usize {
        self.color as usize + 1
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.orientation {
            Orientation::Up => '↑',
            Orientation::Down => '↓',
        };
        write!(f, "({}{arrow})", self.color)
    }
}

/// An ordered tensor product of oriented colored strands; empty is the unit object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Strand>);

impl Signature {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn ups(colors: &[u32]) -> Self {
        Self(colors.iter().map(|c| Strand::up(*c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(Strand::dim).product()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        Signature(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Signature {
        Signature(self.0[start..end].to_vec())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// A linear map between slice objects; rows index the codomain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<S> {
    pub domain: Signature,
    pub codomain: Signature,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> Morphism<S> {
    pub fn new(domain: Signature, codomain: Signature, matrix: Matrix<S>) -> Self {
        assert_eq!(
            matrix.cols(),
            domain.dim(),
            "matrix columns vs domain {domain}"
        );
        assert_eq!(
            matrix.rows(),
            codomain.dim(),
            "matrix rows vs codomain {codomain}"
        );
        Self {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity<R: ScalarRing<Elem = S>>(ring: &R, sig: &Signature) -> Self {
        Self::new(sig.clone(), sig.clone(), Matrix::identity(ring, sig.dim()))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism<S>) -> Result<Morphism<S>, RibbonError> {
        if f.codomain != self.domain {
            return Err(RibbonError::SignatureMismatch {
                expected: self.domain.clone(),
                found: f.codomain.clone(),
            });
        }
        Ok(Morphism::new(
            f.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&f.matrix),
        ))
    }

    pub fn tensor(&self, g: &Morphism<S>) -> Morphism<S> {
        Morphism::new(
            self.domain.concat(&g.domain),
            self.codomain.concat(&g.codomain),
            self.matrix.kron(&g.matrix),
        )
    }
}

/// The scalar of an endomorphism of the unit object, with zero taken from `ring`.
pub fn scalar_of<R: ScalarRing>(ring: &R, m: &Morphism<R::Elem>) -> Option<R::Elem> {
    if m.domain.is_empty() && m.codomain.is_empty() {
        Some(m.matrix.get(0, 0).cloned().unwrap_or_else(|| ring.zero()))
    } else {
        None
    }
}

/// Trivial action on the unit object.
fn unit_action<R: ScalarRing>(ring: &R) -> Action<R::Elem> {
    Action {
        weights: vec![0],
        e: Matrix::zeros(1, 1),
        f: Matrix::zeros(1, 1),
        k: Matrix::identity(ring, 1),
        kinv: Matrix::identity(ring, 1),
    }
}

/// `U_q(sl2)` action on a slice object.
pub fn signature_action<R: ScalarRing>(ring: &R, sig: &Signature) -> Action<R::Elem> {
    sig.0.iter().fold(unit_action(ring), |acc, s| {
        let rep = make_rep(ring, s.color).action;
        let strand = match s.orientation {
            Orientation::Up => rep,
            Orientation::Down => dual_action(&rep),
        };
        if acc.dim() == 1 && acc.weights == [0] && acc.e.is_zero() {
            strand
        } else {
            tensor_pair(ring, &acc, &strand)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingSign {
    Positive,
    Negative,
}

/// Permutation matrix `A ⊗ B -> B ⊗ A`.
fn flip<R: ScalarRing>(ring: &R, da: usize, db: usize) -> Matrix<R::Elem> {
    let mut p = Matrix::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            p.set(j * da + i, i * db + j, ring.one());
        }
    }
    p
}

/// `x^k / [k]!` entrywise; exact because divided powers act integrally.
fn divided_power(x: &Matrix<LaurentScalar>, k: u32) -> Matrix<LaurentScalar> {
    let fact = quantum_factorial(k);
    let p = x.pow_in(&Generic, k);
    p.map(|e| e.exact_div(&fact).expect("divided powers act integrally"))
}

/// Braiding `A ⊗ B -> B ⊗ A` between arbitrary weight modules over `Z[v, v^-1]`.
///
/// Positive: `flip ∘ q^(H⊗H/2) ∘ Σ_k q^(k(k-1)/2) (q - q⁻¹)^k F^(k) ⊗ E^k`, where
/// `F^(k) = F^k/[k]!` acts on `A`, `E` on `B`, and `q^(H⊗H/2)` is `v^(w_a w_b)`.
/// Negative: the inverse of the positive braiding `B ⊗ A -> A ⊗ B`.
pub fn universal_braiding(
    a: &Action<LaurentScalar>,
    b: &Action<LaurentScalar>,
    sign: CrossingSign,
) -> Matrix<LaurentScalar> {
    let ring = Generic;
    let q_diff = &LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(-1);
    let (x, y) = match sign {
        CrossingSign::Positive => (a, b),
        CrossingSign::Negative => (b, a),
    };
    // Θ on x ⊗ y
    let mut theta = Matrix::zeros(x.dim() * y.dim(), x.dim() * y.dim());
    let mut k = 0u32;
    loop {
        let fx = divided_power(&x.f, k);
        let ey = y.e.pow_in(&ring, k);
        if fx.is_zero() || ey.is_zero() {
            break;
        }
        let kk = k as i64;
        let coeff = match sign {
            CrossingSign::Positive => &LaurentScalar::v_pow(kk * (kk - 1)) * &q_diff.pow(k),
            CrossingSign::Negative => {
                let c = &LaurentScalar::v_pow(-kk * (kk - 1)) * &q_diff.pow(k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            }
        };
        theta = theta.add(&fx.kron(&ey).scale(&coeff));
        k += 1;
    }
    let sgn = match sign {
        CrossingSign::Positive => 1,
        CrossingSign::Negative => -1,
    };
    let diag = Matrix::diagonal(x.weights.iter().flat_map(|wx| {
        y.weights
            .iter()
            .map(move |wy| LaurentScalar::v_pow(sgn * wx * wy))
    }));
    match sign {
        CrossingSign::Positive => flip(&ring, x.dim(), y.dim()).mul(&diag).mul(&theta),
        // (flip_{b,a} D Θ)⁻¹ = Θ⁻¹ D⁻¹ flip_{a,b}
        CrossingSign::Negative => theta.mul(&diag).mul(&flip(&ring, a.dim(), b.dim())),
    }
}

fn generic_rep(n: u32) -> Action<LaurentScalar> {
    make_rep(&Generic, n).action
}

/// `S^±: V_m ⊗ V_n -> V_n ⊗ V_m`.
pub fn braiding<R: ScalarRing>(ring: &R, m: u32, n: u32, sign: CrossingSign) -> Morphism<R::Elem> {
    let mat = universal_braiding(&generic_rep(m), &generic_rep(n), sign);
    Morphism::new(
        Signature::ups(&[m, n]),
        Signature::ups(&[n, m]),
        mat.map(|x| ring.embed(x)),
    )
}

/// Twist on `V_n`: `v^(n(n+2))`.
pub fn twist_generic(n: u32) -> LaurentScalar {
    let n = n as i64;
    LaurentScalar::v_pow(n * (n + 2))
}

pub fn twist<R: ScalarRing>(ring: &R, n: u32) -> R::Elem {
    ring.embed(&twist_generic(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualityKind {
    /// `V* ⊗ V -> 1`, `f ⊗ x ↦ f(x)`.
    Ev,
    /// `1 -> V ⊗ V*`, `1 ↦ Σ e_i ⊗ e^i`.
    Coev,
    /// `V ⊗ V* -> 1`, `x ⊗ f ↦ f(K⁻¹ x)`.
    EvPivotal,
    /// `1 -> V* ⊗ V`, `1 ↦ Σ e^i ⊗ K e_i`.
    CoevPivotal,
}

/// The four duality morphisms for `V_n`.
///
/// The pivotal pair inserts `K⁻¹` (evaluation) and `K` (coevaluation). The
/// opposite insertion also yields loop value `[n+1]` but the resulting maps
/// are not module maps for this coproduct, so it is rejected by
/// [`check_duality_intertwiners`].
pub fn duality<R: ScalarRing>(ring: &R, n: u32, kind: DualityKind) -> Morphism<R::Elem> {
    let d = n as usize + 1;
    let weight = |i: usize| n as i64 - 2 * i as i64;
    let (up, down) = (Strand::up(n), Strand::down(n));
    match kind {
        DualityKind::Ev => {
            let mut m = Matrix::zeros(1, d * d);
            for i in 0..d {
                m.set(0, i * d + i, ring.one());
            }
            Morphism::new(Signature(vec![down, up]), Signature::empty(), m)
        }
        DualityKind::Coev => {
            let mut m = Matrix::zeros(d * d, 1);
            for i in 0..d {
                m.set(i * d + i, 0, ring.one());
            }
            Morphism::new(Signature::empty(), Signature(vec![up, down]), m)
        }
        DualityKind::EvPivotal => {
            let mut m = Matrix::zeros(1, d * d);
            for i in 0..d {
                m.set(0, i * d + i, ring.q_pow(-weight(i)));
            }
            Morphism::new(Signature(vec![up, down]), Signature::empty(), m)
        }
        DualityKind::CoevPivotal => {
            let mut m = Matrix::zeros(d * d, 1);
            for i in 0..d {
                m.set(i * d + i, 0, ring.q_pow(weight(i)));
            }
            Morphism::new(Signature::empty(), Signature(vec![down, up]), m)
        }
    }
}

/// Loop value `ev_pivotal ∘ coev`.
pub fn quantum_dim<R: ScalarRing>(ring: &R, n: u32) -> R::Elem {
    let lp = duality(ring, n, DualityKind::EvPivotal)
        .compose(&duality(ring, n, DualityKind::Coev))
        .expect("loop signatures agree");
    scalar_of(ring, &lp).expect("unit endomorphism")
}

/// A braid generator `s_i^{±1}`, `i` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidGenerator {
    pub index: usize,
    pub sign: CrossingSign,
}

impl fmt::Display for BraidGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            CrossingSign::Positive => write!(f, "s{}", self.index),
            CrossingSign::Negative => write!(f, "s{}^-1", self.index),
        }
    }
}

/// A braid word; the product `g_1 g_2 ... g_k` acts as `γ(g_1) ∘ ... ∘ γ(g_k)`,
/// so the rightmost generator is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<BraidGenerator>);

impl BraidWord {
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        BraidWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.index).max().unwrap_or(0)
    }

    /// The mirror word: every generator inverted.
    pub fn mirror(&self) -> BraidWord {
        BraidWord(
            self.0
                .iter()
                .map(|g| BraidGenerator {
                    index: g.index,
                    sign: match g.sign {
                        CrossingSign::Positive => CrossingSign::Negative,
                        CrossingSign::Negative => CrossingSign::Positive,
                    },
                })
                .collect(),
        )
    }
}

impl FromStr for BraidWord {
    type Err = RibbonError;

    /// Whitespace-separated tokens `s1`, `s2^-1`, `s3^1`.
    fn from_str(text: &str) -> Result<Self, RibbonError> {
        let mut gens = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = position + token.len();
            let bad = || RibbonError::BadBraidToken {
                token: token.to_string(),
                position,
            };
            let body = token.strip_prefix('s').ok_or_else(bad)?;
            let (idx, sign) = match body.split_once('^') {
                None => (body, CrossingSign::Positive),
                Some((idx, "-1")) => (idx, CrossingSign::Negative),
                Some((idx, "1")) => (idx, CrossingSign::Positive),
                Some(_) => return Err(bad()),
            };
            let index: usize = idx.parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            gens.push(BraidGenerator { index, sign });
        }
        Ok(BraidWord(gens))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `γ(s_i^±)` on upward strands with the given colors, at 1-based position `i`.
pub fn generator_morphism<R: ScalarRing>(
    ring: &R,
    g: BraidGenerator,
    colors: &[u32],
) -> Result<Morphism<R::Elem>, RibbonError> {
    let i = g.index;
    if i == 0 || i >= colors.len() {
        return Err(RibbonError::IndexOutOfRange {
            index: i,
            strands: colors.len(),
        });
    }
    let left = Morphism::identity(ring, &Signature::ups(&colors[..i - 1]));
    let right = Morphism::identity(ring, &Signature::ups(&colors[i + 1..]));
    let cross = braiding(ring, colors[i - 1], colors[i], g.sign);
    Ok(left.tensor(&cross).tensor(&right))
}

/// `γ_b` for the braid word acting on upward strands with domain colors `colors`.
pub fn braid_rep<R: ScalarRing>(
    ring: &R,
    word: &BraidWord,
    colors: &[u32],
) -> Result<Morphism<R::Elem>, RibbonError> {
    let mut acc = Morphism::identity(ring, &Signature::ups(colors));
    let mut current = colors.to_vec();
    for g in word.0.iter().rev() {
        let step = generator_morphism(ring, *g, &current)?;
        current.swap(g.index - 1, g.index);
        acc = step.compose(&acc)?;
    }
    Ok(acc)
}

/// Quantum trace of an endomorphism of upward strands: `tr(M · K)`, the value of
/// its closure by `coev_pivotal` / `ev` pairs.
pub fn quantum_trace<R: ScalarRing>(ring: &R, m: &Morphism<R::Elem>) -> R::Elem {
    assert_eq!(m.domain, m.codomain, "quantum trace of a non-endomorphism");
    let k = signature_action(ring, &m.domain).k;
    m.matrix.mul(&k).trace(&ring.zero())
}

// ---------------------------------------------------------------------------
// Axiom checks
// ---------------------------------------------------------------------------

/// A failed identity and where it fails.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{axiom} fails: {witness}")]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: String,
}

fn expect_equal<S: Scalar>(
    axiom: impl Fn() -> String,
    lhs: &Matrix<S>,
    rhs: &Matrix<S>,
) -> Result<(), AxiomFailure> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((r, c)) => Err(AxiomFailure {
            axiom: axiom(),
            witness: format!("entry ({r}, {c})"),
        }),
    }
}

fn tensor_actions(colors: &[u32]) -> Action<LaurentScalar> {
    let mut it = colors.iter();
    let first = generic_rep(*it.next().expect("at least one factor"));
    it.fold(first, |acc, c| {
        tensor_pair(&Generic, &acc, &generic_rep(*c))
    })
}

fn identity_gen(d: usize) -> Matrix<LaurentScalar> {
    Matrix::identity(&Generic, d)
}

/// `Ř Δ(x) = Δ(x) Ř` for `x ∈ {E, F, K, K⁻¹}` on `V_m ⊗ V_n`, both signs.
pub fn check_braiding_intertwiner(m: u32, n: u32) -> Result<(), AxiomFailure> {
    let src = tensor_actions(&[m, n]);
    let dst = tensor_actions(&[n, m]);
    for sign in [CrossingSign::Positive, CrossingSign::Negative] {
        let r = braiding(&Generic, m, n, sign).matrix;
        for (name, x, y) in [
            ("E", &src.e, &dst.e),
            ("F", &src.f, &dst.f),
            ("K", &src.k, &dst.k),
            ("K^-1", &src.kinv, &dst.kinv),
        ] {
            expect_equal(
                || format!("intertwiner S{sign:?}({m},{n}) with {name}"),
                &r.mul(x),
                &y.mul(&r),
            )?;
        }
    }
    Ok(())
}

/// `S⁻_{m,n} ∘ S⁺_{n,m} = id` and `S⁺_{m,n} ∘ S⁻_{n,m} = id`.
pub fn check_braiding_inverse(m: u32, n: u32) -> Result<(), AxiomFailure> {
    let id = identity_gen((m as usize + 1) * (n as usize + 1));
    let pos = braiding(&Generic, n, m, CrossingSign::Positive).matrix;
    let neg = braiding(&Generic, m, n, CrossingSign::Negative).matrix;
    expect_equal(|| format!("S- ∘ S+ = id on ({n},{m})"), &neg.mul(&pos), &id)?;
    expect_equal(|| format!("S+ ∘ S- = id on ({m},{n})"), &pos.mul(&neg), &id)
}

/// Both hexagons for each sign, with the composite object braided via the
/// coproduct action on it.
pub fn check_hexagons(x: u32, y: u32, z: u32) -> Result<(), AxiomFailure> {
    let (vx, vy, vz) = (generic_rep(x), generic_rep(y), generic_rep(z));
    let vyz = tensor_pair(&Generic, &vy, &vz);
    let vxy = tensor_pair(&Generic, &vx, &vy);
    let (ix, iy, iz) = (
        identity_gen(vx.dim()),
        identity_gen(vy.dim()),
        identity_gen(vz.dim()),
    );
    for sign in [CrossingSign::Positive, CrossingSign::Negative] {
        let s =
            |a: &Action<LaurentScalar>, b: &Action<LaurentScalar>| universal_braiding(a, b, sign);
        // S_{X, Y⊗Z} = (id_Y ⊗ S_{X,Z}) ∘ (S_{X,Y} ⊗ id_Z)
        let lhs = s(&vx, &vyz);
        let rhs = iy.kron(&s(&vx, &vz)).mul(&s(&vx, &vy).kron(&iz));
        expect_equal(
            || format!("hexagon H1 ({sign:?}) on ({x},{y},{z})"),
            &lhs,
            &rhs,
        )?;
        // S_{X⊗Y, Z} = (S_{X,Z} ⊗ id_Y) ∘ (id_X ⊗ S_{Y,Z})
        let lhs = s(&vxy, &vz);
        let rhs = s(&vx, &vz).kron(&iy).mul(&ix.kron(&s(&vy, &vz)));
        expect_equal(
            || format!("hexagon H2 ({sign:?}) on ({x},{y},{z})"),
            &lhs,
            &rhs,
        )?;
    }
    Ok(())
}

/// `σ₁σ₂σ₁ = σ₂σ₁σ₂` on `V_a ⊗ V_b ⊗ V_c`.
pub fn check_yang_baxter(a: u32, b: u32, c: u32) -> Result<(), AxiomFailure> {
    let word = |s: &str| s.parse::<BraidWord>().expect("static word");
    let colors = [a, b, c];
    let lhs = braid_rep(&Generic, &word("s1 s2 s1"), &colors).map_err(to_failure)?;
    let rhs = braid_rep(&Generic, &word("s2 s1 s2"), &colors).map_err(to_failure)?;
    expect_equal(
        || format!("Yang-Baxter on ({a},{b},{c})"),
        &lhs.matrix,
        &rhs.matrix,
    )?;
    if lhs.codomain != rhs.codomain {
        return Err(AxiomFailure {
            axiom: "Yang-Baxter codomain".into(),
            witness: format!("{} vs {}", lhs.codomain, rhs.codomain),
        });
    }
    Ok(())
}

fn to_failure(e: RibbonError) -> AxiomFailure {
    AxiomFailure {
        axiom: "construction".into(),
        witness: e.to_string(),
    }
}

/// The four zig-zag identities for `V_n`.
pub fn check_zigzags(n: u32) -> Result<(), AxiomFailure> {
    let g = Generic;
    let up = Morphism::identity(&g, &Signature(vec![Strand::up(n)]));
    let down = Morphism::identity(&g, &Signature(vec![Strand::down(n)]));
    let ev = duality(&g, n, DualityKind::Ev);
    let coev = duality(&g, n, DualityKind::Coev);
    let evp = duality(&g, n, DualityKind::EvPivotal);
    let coevp = duality(&g, n, DualityKind::CoevPivotal);
    let cases: [(
        &str,
        Morphism<LaurentScalar>,
        Morphism<LaurentScalar>,
        &Morphism<LaurentScalar>,
    ); 4] = [
        (
            "(id ⊗ ev)(coev ⊗ id) on V",
            up.tensor(&ev),
            coev.tensor(&up),
            &up,
        ),
        (
            "(ev ⊗ id)(id ⊗ coev) on V*",
            ev.tensor(&down),
            down.tensor(&coev),
            &down,
        ),
        (
            "(ev~ ⊗ id)(id ⊗ coev~) on V",
            evp.tensor(&up),
            up.tensor(&coevp),
            &up,
        ),
        (
            "(id ⊗ ev~)(coev~ ⊗ id) on V*",
            down.tensor(&evp),
            coevp.tensor(&down),
            &down,
        ),
    ];
    for (name, outer, inner, id) in cases {
        let comp = outer.compose(&inner).map_err(to_failure)?;
        expect_equal(
            || format!("zig-zag {name}, n={n}"),
            &comp.matrix,
            &id.matrix,
        )?;
        if comp.domain != id.domain || comp.codomain != id.codomain {
            return Err(AxiomFailure {
                axiom: format!("zig-zag {name}"),
                witness: "signature".into(),
            });
        }
    }
    Ok(())
}

/// Each duality morphism is a module map: `φ ∘ x = ε(x) φ` style identities
/// expressed as `φ Δ(x) = Δ(x) φ` with the trivial action on the unit object.
pub fn check_duality_intertwiners(n: u32) -> Result<(), AxiomFailure> {
    let g = Generic;
    for kind in [
        DualityKind::Ev,
        DualityKind::Coev,
        DualityKind::EvPivotal,
        DualityKind::CoevPivotal,
    ] {
        let phi = duality(&g, n, kind);
        let src = signature_action(&g, &phi.domain);
        let dst = signature_action(&g, &phi.codomain);
        for (name, x, y) in [
            ("E", &src.e, &dst.e),
            ("F", &src.f, &dst.f),
            ("K", &src.k, &dst.k),
        ] {
            expect_equal(
                || format!("{kind:?} module map for {name}, n={n}"),
                &phi.matrix.mul(x),
                &y.mul(&phi.matrix),
            )?;
        }
    }
    Ok(())
}

/// The double dual acts by `x ↦ ρ(S²x) = K⁻¹ ρ(x) K`, so `K⁻¹: V_n -> V_n**` is
/// a module isomorphism; it is the element inserted by the pivotal evaluation.
pub fn check_pivotal(n: u32) -> Result<(), AxiomFailure> {
    let rep = generic_rep(n);
    let dd = dual_action(&dual_action(&rep));
    for (name, x, y) in [
        ("E", &rep.e, &dd.e),
        ("F", &rep.f, &dd.f),
        ("K", &rep.k, &dd.k),
    ] {
        expect_equal(
            || format!("pivotal V_{n} -> V_{n}** for {name}"),
            &rep.kinv.mul(x),
            &y.mul(&rep.kinv),
        )?;
    }
    Ok(())
}

/// Every bracketing of the iterated tensor action coincides (associators are identities).
pub fn check_pentagon(colors: &[u32]) -> Result<(), AxiomFailure> {
    fn bracketings(colors: &[u32]) -> Vec<Action<LaurentScalar>> {
        if colors.len() == 1 {
            return vec![generic_rep(colors[0])];
        }
        let mut out = Vec::new();
        for split in 1..colors.len() {
            for l in bracketings(&colors[..split]) {
                for r in bracketings(&colors[split..]) {
                    out.push(tensor_pair(&Generic, &l, &r));
                }
            }
        }
        out
    }
    let all = bracketings(colors);
    let first = &all[0];
    for (i, other) in all.iter().enumerate().skip(1) {
        for (name, a, b) in [
            ("E", &first.e, &other.e),
            ("F", &first.f, &other.f),
            ("K", &first.k, &other.k),
        ] {
            expect_equal(
                || format!("bracketing 0 vs {i} of {colors:?} for {name}"),
                a,
                b,
            )?;
        }
    }
    Ok(())
}

/// A highest-weight vector of weight `c` inside `V_m ⊗ V_n`.
///
/// Coefficients `α_i` on `m_i ⊗ m_(p-i)`, `p = (m + n - c)/2`, solve
/// `α_(i+1) [m-i] = -α_i q^(m-2i) [n-p+i+1]`, scaled to stay integral.
pub fn highest_weight_vector(m: u32, n: u32, c: u32) -> Vec<LaurentScalar> {
    use crate::ring::quantum_integer as qi;
    let (mi, ni, ci) = (m as i64, n as i64, c as i64);
    assert!(
        (mi - ni).abs() <= ci && ci <= mi + ni && (mi + ni - ci) % 2 == 0,
        "V_{c} not in V_{m} ⊗ V_{n}"
    );
    let p = (mi + ni - ci) / 2;
    let lo = (p - ni).max(0);
    let hi = p.min(mi);
    let d_n = n as usize + 1;
    let mut vec = vec![LaurentScalar::zero(); (m as usize + 1) * d_n];
    for i in lo..=hi {
        let mut alpha = if (i - lo) % 2 == 0 {
            LaurentScalar::one()
        } else {
            LaurentScalar::from_int(-1)
        };
        for t in lo..i {
            alpha = &(&alpha * &LaurentScalar::q_pow(mi - 2 * t)) * &qi(ni - p + t + 1);
        }
        for t in i..hi {
            alpha = &alpha * &qi(mi - t);
        }
        vec[i as usize * d_n + (p - i) as usize] = alpha;
    }
    vec
}

/// Twist convention hook used by the axiom suite.
pub type TwistFn = fn(u32) -> LaurentScalar;

/// Balancing on each summand: `S_{n,m} S_{m,n}` acts on the highest-weight
/// vector of `V_c ⊂ V_m ⊗ V_n` by `t_c t_m⁻¹ t_n⁻¹`.
pub fn check_balancing_with(m: u32, n: u32, twist_of: TwistFn) -> Result<(), AxiomFailure> {
    let t = tensor_actions(&[m, n]);
    let zero = LaurentScalar::zero();
    let double = braiding(&Generic, n, m, CrossingSign::Positive)
        .compose(&braiding(&Generic, m, n, CrossingSign::Positive))
        .map_err(to_failure)?
        .matrix;
    let lo = m.abs_diff(n);
    for c in (lo..=m + n).step_by(2) {
        let w = highest_weight_vector(m, n, c);
        let fail = |what: &str| AxiomFailure {
            axiom: format!("balancing on V_{c} ⊂ V_{m} ⊗ V_{n}"),
            witness: what.to_string(),
        };
        if w.iter().all(LaurentScalar::is_zero) {
            return Err(fail("zero highest-weight vector"));
        }
        if t.e.apply(&w, &zero).iter().any(|x| !x.is_zero()) {
            return Err(fail("vector not killed by E"));
        }
        let inv = |x: LaurentScalar| x.unit_inverse().expect("twist is a unit");
        let lambda = &(&twist_of(c) * &inv(twist_of(m))) * &inv(twist_of(n));
        let image = double.apply(&w, &zero);
        if let Some(i) = (0..w.len()).find(|&i| image[i] != &lambda * &w[i]) {
            return Err(fail(&format!(
                "coordinate {i}: expected {} got {}",
                &lambda * &w[i],
                image[i]
            )));
        }
    }
    Ok(())
}

pub fn check_balancing(m: u32, n: u32) -> Result<(), AxiomFailure> {
    check_balancing_with(m, n, twist_generic)
}
