//! The skeletal categories FI and OI, canonical factorizations and the left
//! Ore condition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symrep::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatKind {
    #[serde(rename = "FI")]
    Fi,
    #[serde(rename = "OI")]
    Oi,
}

impl fmt::Display for CatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CatKind::Fi => "FI",
            CatKind::Oi => "OI",
        })
    }
}

impl std::str::FromStr for CatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fi" => Ok(CatKind::Fi),
            "oi" => Ok(CatKind::Oi),
            _ => Err(Error::Parse(format!("unknown category {s:?}, expected fi or oi"))),
        }
    }
}

/// A morphism `[m] → [n]`; `values[k]` is the one-based image of `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Injection {
    pub m: usize,
    pub n: usize,
    pub values: Vec<usize>,
}

impl Injection {
    pub fn new(m: usize, n: usize, values: Vec<usize>) -> Result<Self> {
        let f = Injection { m, n, values };
        f.check(CatKind::Fi)?;
        Ok(f)
    }

    pub fn check(&self, kind: CatKind) -> Result<()> {
        if self.values.len() != self.m {
            return Err(Error::Invalid(format!("injection from [{}] has {} values", self.m, self.values.len())));
        }
        let mut seen = vec![false; self.n + 1];
        for &v in &self.values {
            if v == 0 || v > self.n {
                return Err(Error::Invalid(format!("value {v} outside [{}]", self.n)));
            }
            if seen[v] {
                return Err(Error::Invalid(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        if kind == CatKind::Oi && self.values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("{:?} is not order preserving", self.values)));
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Self {
        Injection { m: n, n, values: (1..=n).collect() }
    }

    /// `ι^{n−m}`: `k ↦ k`.
    pub fn standard(m: usize, n: usize) -> Self {
        assert!(m <= n);
        Injection { m, n, values: (1..=m).collect() }
    }

    /// The coface `α_{n,i} : [n] → [n+1]` whose image misses `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!((1..=n + 1).contains(&i));
        Injection { m: n, n: n + 1, values: (1..=n).map(|k| if k < i { k } else { k + 1 }).collect() }
    }

    /// The increasing injection onto a sorted set.
    pub fn onto_sorted(n: usize, image: &[usize]) -> Self {
        Injection { m: image.len(), n, values: image.to_vec() }
    }

    pub fn from_perm(p: &[usize]) -> Self {
        let n = p.len();
        Injection { m: n, n, values: p.iter().map(|x| x + 1).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.m == self.n && self.values.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn is_order_preserving(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Values of `[n]` missed by the injection, increasing.
    pub fn complement(&self) -> Vec<usize> {
        let mut hit = vec![false; self.n + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        (1..=self.n).filter(|&v| !hit[v]).collect()
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<String> = self.values.iter().enumerate().map(|(k, v)| format!("{}↦{}", k + 1, v)).collect();
        write!(f, "[{}]→[{}] ({})", self.m, self.n, maps.join(", "))
    }
}

/// All morphisms `[m] → [n]` in lexicographic order of value tuples.
pub fn hom_set(kind: CatKind, m: usize, n: usize) -> Vec<Injection> {
    fn rec(kind: CatKind, m: usize, n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Injection>) {
        if cur.len() == m {
            out.push(Injection { m, n, values: cur.clone() });
            return;
        }
        let lo = match kind {
            CatKind::Oi => cur.last().map_or(1, |&v| v + 1),
            CatKind::Fi => 1,
        };
        for v in lo..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(kind, m, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if m <= n {
        rec(kind, m, n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    }
    out
}

/// Position of a morphism in `hom_set`, computed without enumeration.
pub fn hom_index(kind: CatKind, f: &Injection) -> usize {
    match kind {
        CatKind::Oi => {
            // Rank of a sorted subset in lexicographic order.
            let (m, n) = (f.m, f.n);
            let mut idx = 0usize;
            let mut prev = 0;
            for (k, &v) in f.values.iter().enumerate() {
                for u in (prev + 1)..v {
                    idx += binom(n - u, m - k - 1);
                }
                prev = v;
            }
            idx
        }
        CatKind::Fi => {
            let (m, n) = (f.m, f.n);
            let mut idx = 0usize;
            let mut used = vec![false; n + 1];
            for (k, &v) in f.values.iter().enumerate() {
                let smaller = (1..v).filter(|&u| !used[u]).count();
                idx += smaller * falling(n - k - 1, m - k - 1);
                used[v] = true;
            }
            idx
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    crate::combinat::binomial(n, k) as usize
}

fn falling(n: usize, k: usize) -> usize {
    crate::combinat::falling_factorial(n, k) as usize
}

/// `g ∘ f`.
pub fn compose(g: &Injection, f: &Injection) -> Result<Injection> {
    if f.n != g.m {
        return Err(Error::Invalid(format!("cannot compose {g} after {f}")));
    }
    Ok(Injection { m: f.m, n: g.n, values: f.values.iter().map(|&v| g.values[v - 1]).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// `f = σ ∘ ι^{n−m}` with `σ` a permutation of `[n]` (zero-based image tuple).
    Fi { sigma: Perm, m: usize },
    /// `f = α_{n,i_1} ∘ ⋯`, listed in the order applied: first entry acts first.
    Oi { cofaces: Vec<(usize, usize)>, m: usize },
}

/// FI: `σ` sends `k ≤ m` to `f(k)` and `m+1, …, n` to the complement of the
/// image in increasing order. OI: remove the missing values in decreasing order.
pub fn canonical_factorization(kind: CatKind, f: &Injection) -> Result<Factorization> {
    f.check(kind)?;
    match kind {
        CatKind::Fi => {
            let mut sigma: Vec<usize> = f.values.iter().map(|v| v - 1).collect();
            sigma.extend(f.complement().into_iter().map(|v| v - 1));
            Ok(Factorization::Fi { sigma, m: f.m })
        }
        CatKind::Oi => {
            // f = α_{n-1,c_t} ∘ ⋯ ∘ α_{m,c_1} with c_1 < ⋯ < c_t the missing values:
            // inserting the gaps from smallest to largest keeps earlier labels fixed.
            let missing = f.complement();
            let cofaces = missing.iter().enumerate().map(|(k, &c)| (f.m + k, c)).collect();
            Ok(Factorization::Oi { cofaces, m: f.m })
        }
    }
}

/// Recomposes a factorization into a single injection.
pub fn recompose(fact: &Factorization) -> Injection {
    match fact {
        Factorization::Fi { sigma, m } => {
            let n = sigma.len();
            compose(&Injection::from_perm(sigma), &Injection::standard(*m, n)).expect("shapes agree")
        }
        Factorization::Oi { cofaces, m } => cofaces.iter().fold(Injection::identity(*m), |acc, &(n, i)| {
            compose(&Injection::coface(n, i), &acc).expect("shapes agree")
        }),
    }
}

/// A small category presented by explicit morphisms and a composition rule.
pub trait SmallCategory {
    type Obj: Clone + fmt::Debug + PartialEq;
    type Mor: Clone + fmt::Debug + PartialEq;

    fn objects(&self) -> Vec<Self::Obj>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    /// Objects searched as codomains of completing squares for the given pair of targets.
    fn completion_targets(&self, y: &Self::Obj, y2: &Self::Obj) -> Vec<Self::Obj>;
}

#[derive(Clone, Debug)]
pub struct OreWitness<M> {
    pub f: M,
    pub f2: M,
    pub g: M,
    pub g2: M,
}

#[derive(Clone, Debug)]
pub struct OreReport<M> {
    pub pairs_checked: usize,
    pub witnesses: Vec<OreWitness<M>>,
    /// First pair with no completing square, if any.
    pub failure: Option<(M, M)>,
}

impl<M> OreReport<M> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// For every pair `f: x → y`, `f′: x → y′` search `g, g′` with `g∘f = g′∘f′`.
pub fn left_ore_check<C: SmallCategory>(cat: &C) -> OreReport<C::Mor> {
    let objs = cat.objects();
    let mut report = OreReport { pairs_checked: 0, witnesses: Vec::new(), failure: None };
    for x in &objs {
        for y in &objs {
            for y2 in &objs {
                let homs_y = cat.hom(x, y);
                let homs_y2 = cat.hom(x, y2);
                for f in &homs_y {
                    for f2 in &homs_y2 {
                        report.pairs_checked += 1;
                        match find_square(cat, y, y2, f, f2) {
                            Some((g, g2)) => report.witnesses.push(OreWitness {
                                f: f.clone(),
                                f2: f2.clone(),
                                g,
                                g2,
                            }),
                            None => {
                                report.failure = Some((f.clone(), f2.clone()));
                                return report;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

fn find_square<C: SmallCategory>(cat: &C, y: &C::Obj, y2: &C::Obj, f: &C::Mor, f2: &C::Mor) -> Option<(C::Mor, C::Mor)> {
    for z in cat.completion_targets(y, y2) {
        let gs2 = cat.hom(y2, &z);
        for g in cat.hom(y, &z) {
            let gf = cat.compose(&g, f);
            if let Some(g2) = gs2.iter().find(|g2| cat.compose(g2, f2) == gf) {
                return Some((g, g2.clone()));
            }
        }
    }
    None
}

/// FI or OI with objects `[0], …, [bound]`; completions searched up to `|y| + |y′|`.
#[derive(Clone, Debug)]
pub struct BoundedSkeleton {
    pub kind: CatKind,
    pub bound: usize,
}

impl SmallCategory for BoundedSkeleton {
    type Obj = usize;
    type Mor = Injection;

    fn objects(&self) -> Vec<usize> {
        (0..=self.bound).collect()
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<Injection> {
        hom_set(self.kind, *a, *b)
    }

    fn compose(&self, g: &Injection, f: &Injection) -> Injection {
        compose(g, f).expect("composable")
    }

    fn completion_targets(&self, y: &usize, y2: &usize) -> Vec<usize> {
        ((*y).max(*y2)..=(y + y2)).collect()
    }
}

/// The free category on a quiver whose only paths have length at most one.
#[derive(Clone, Debug)]
pub struct FreeQuiverCategory {
    pub vertices: Vec<String>,
    /// `(name, source, target)`.
    pub arrows: Vec<(String, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverMor {
    Id(usize),
    Arrow(usize),
}

impl FreeQuiverCategory {
    /// Two objects `x, y` and two parallel arrows `α, β : x → y`.
    pub fn kronecker() -> Self {
        FreeQuiverCategory {
            vertices: vec!["x".into(), "y".into()],
            arrows: vec![("alpha".into(), 0, 1), ("beta".into(), 0, 1)],
        }
    }

    pub fn name(&self, m: &QuiverMor) -> String {
        match m {
            QuiverMor::Id(v) => format!("id_{}", self.vertices[*v]),
            QuiverMor::Arrow(a) => self.arrows[*a].0.clone(),
        }
    }

    fn endpoints(&self, m: &QuiverMor) -> (usize, usize) {
        match m {
            QuiverMor::Id(v) => (*v, *v),
            QuiverMor::Arrow(a) => (self.arrows[*a].1, self.arrows[*a].2),
        }
    }
}

impl SmallCategory for FreeQuiverCategory {
    type Obj = usize;
    type Mor = QuiverMor;

    fn objects(&self) -> Vec<usize> {
        (0..self.vertices.len()).collect()
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<QuiverMor> {
        let mut out = Vec::new();
        if a == b {
            out.push(QuiverMor::Id(*a));
        }
        for (i, (_, s, t)) in self.arrows.iter().enumerate() {
            if s == a && t == b {
                out.push(QuiverMor::Arrow(i));
            }
        }
        out
    }

    fn compose(&self, g: &QuiverMor, f: &QuiverMor) -> QuiverMor {
        assert_eq!(self.endpoints(f).1, self.endpoints(g).0, "not composable");
        match (g, f) {
            (QuiverMor::Id(_), _) => f.clone(),
            (_, QuiverMor::Id(_)) => g.clone(),
            _ => panic!("paths of length two are absent from this quiver"),
        }
    }

    fn completion_targets(&self, _y: &usize, _y2: &usize) -> Vec<usize> {
        self.objects()
    }
}
