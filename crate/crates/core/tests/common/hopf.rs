use nalgebra::DMatrix;
use qinv_core::hopfcheck::{check_antipode, check_axiom, Axiom, FiniteBialgebra};
use qinv_core::ring::LaurentScalar;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type M = DMatrix<i64>;

fn int(x: &LaurentScalar) -> i64 {
    i64::try_from(x.as_integer().expect("integer entry")).unwrap()
}

/// The structure maps as integer matrices acting on column vectors, with
/// `x_a ⊗ x_b` at index `a * n + b`.
pub struct Maps {
    pub n: usize,
    pub m: M,
    pub u: M,
    pub d: M,
    pub e: M,
    pub s: Option<M>,
}

impl Maps {
    pub fn of(b: &FiniteBialgebra) -> Self {
        let n = b.dim;
        let m = M::from_fn(n, n * n, |e, col| int(&b.mult[col / n][col % n][e]));
        let d = M::from_fn(n * n, n, |row, a| int(&b.comult[a][row / n][row % n]));
        let u = M::from_fn(n, 1, |a, _| int(&b.unit[a]));
        let e = M::from_fn(1, n, |_, a| int(&b.counit[a]));
        let s = b
            .antipode
            .as_ref()
            .map(|s| M::from_fn(n, n, |p, a| int(&s[a][p])));
        Maps { n, m, u, d, e, s }
    }

    pub fn id(&self) -> M {
        M::identity(self.n, self.n)
    }

    /// `(id ⊗ τ ⊗ id)(Δ ⊗ Δ)`, permuting rows instead of multiplying by the swap.
    fn shuffled_double_coproduct(&self) -> M {
        let n = self.n;
        let dd = self.d.kronecker(&self.d);
        M::from_fn(n.pow(4), n * n, |row, col| {
            let (p, s, r, t) = (row / n.pow(3), row / (n * n) % n, row / n % n, row % n);
            dd[(((p * n + r) * n + s) * n + t, col)]
        })
    }

    pub fn holds(&self, which: Axiom) -> bool {
        let (i, one) = (self.id(), M::identity(1, 1));
        let counit_unit = &self.e * &self.u == one;
        match which {
            Axiom::H1_1 => &self.m * self.m.kronecker(&i) == &self.m * i.kronecker(&self.m),
            Axiom::H1_2 => {
                &self.m * self.u.kronecker(&i) == i && &self.m * i.kronecker(&self.u) == i
            }
            Axiom::H2_1 => self.d.kronecker(&i) * &self.d == i.kronecker(&self.d) * &self.d,
            Axiom::H2_2 => {
                self.e.kronecker(&i) * &self.d == i && i.kronecker(&self.e) * &self.d == i
            }
            Axiom::H3_1 => {
                &self.d * &self.m == self.m.kronecker(&self.m) * self.shuffled_double_coproduct()
            }
            Axiom::H3_2 => counit_unit && &self.e * &self.m == self.e.kronecker(&self.e),
            Axiom::H3_3 => counit_unit && &self.d * &self.u == self.u.kronecker(&self.u),
        }
    }

    pub fn antipode_holds(&self) -> bool {
        let s = self.s.as_ref().unwrap();
        let i = self.id();
        let target = &self.u * &self.e;
        &self.m * s.kronecker(&i) * &self.d == target
            && &self.m * i.kronecker(s) * &self.d == target
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Slot {
    Mult(usize, usize, usize),
    Comult(usize, usize, usize),
    Unit(usize),
    Counit(usize),
    Antipode(usize, usize),
}

pub fn slots(n: usize) -> Vec<Slot> {
    let mut out = Vec::new();
    for a in 0..n {
        out.push(Slot::Unit(a));
        out.push(Slot::Counit(a));
        for b in 0..n {
            out.push(Slot::Antipode(a, b));
            for c in 0..n {
                out.push(Slot::Mult(a, b, c));
                out.push(Slot::Comult(a, b, c));
            }
        }
    }
    out
}

pub fn mutate(b: &FiniteBialgebra, slot: Slot, delta: i64) -> FiniteBialgebra {
    let mut b = b.clone();
    let bump = |x: &mut LaurentScalar| *x = &*x + &LaurentScalar::from_int(delta);
    match slot {
        Slot::Mult(x, y, z) => bump(&mut b.mult[x][y][z]),
        Slot::Comult(x, y, z) => bump(&mut b.comult[x][y][z]),
        Slot::Unit(x) => bump(&mut b.unit[x]),
        Slot::Counit(x) => bump(&mut b.counit[x]),
        Slot::Antipode(x, y) => bump(&mut b.antipode.as_mut().unwrap()[x][y]),
    }
    b
}

/// Every check agrees with the matrix oracle; returns how many checks failed.
pub fn agree_with_oracle(b: &FiniteBialgebra, context: &str) -> usize {
    let oracle = Maps::of(b);
    let mut failures = 0;
    for axiom in Axiom::ALL {
        let ours = check_axiom(b, axiom);
        assert_eq!(
            ours.is_ok(),
            oracle.holds(axiom),
            "{context}: {axiom} {ours:?}"
        );
        failures += usize::from(ours.is_err());
    }
    let ours = check_antipode(b).unwrap();
    assert_eq!(
        ours.is_ok(),
        oracle.antipode_holds(),
        "{context}: antipode {ours:?}"
    );
    failures + usize::from(ours.is_err())
}

/// Mutates entries by ±1 and checks every verdict against the oracle; returns
/// `(mutations, detected)`.
pub fn fuzz(name: &str, b: &FiniteBialgebra, sample: Option<usize>) -> (usize, usize) {
    assert_eq!(
        agree_with_oracle(b, name),
        0,
        "{name} should be a Hopf algebra"
    );
    let mut all = slots(b.dim);
    if let Some(k) = sample {
        all.shuffle(&mut ChaCha8Rng::seed_from_u64(b.dim as u64));
        all.truncate(k);
    }
    let mut detected = 0;
    for slot in &all {
        for delta in [1, -1] {
            let broken = agree_with_oracle(
                &mutate(b, *slot, delta),
                &format!("{name} {slot:?} {delta:+}"),
            );
            detected += usize::from(broken > 0);
        }
    }
    assert!(detected > 0, "{name}: no mutation was detected");
    (2 * all.len(), detected)
}
