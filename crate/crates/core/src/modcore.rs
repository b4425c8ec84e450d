//! Truncated FI- and OI-modules over ℚ and their morphisms.
//!
//! An FI-module stores, per degree `n`, the matrices of `s_1, …, s_{n−1}` and
//! the standard inclusion `ι_n : V_n → V_{n+1}`. An OI-module stores all
//! coface matrices `A_{n,i}`. Every other morphism acts through its canonical
//! factorization.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{hook_dimension, Partition};
use crate::error::{Error, Result};
use crate::linalgq::{
    dense_from_sparse, is_zero_vec, kernel, q_from_str, q_to_string, Echelon, RationalMatrix, SparseRow, Subspace, Q,
};
use crate::skelcat::{canonical_factorization, hom_index, hom_set, CatKind, Factorization, Injection};
use crate::symrep::{apply_perm, check_coxeter, decompose_by_character, irrep_matrices, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub gen_degree: usize,
    pub rel_degree: usize,
}

impl Bounds {
    pub fn presentation_degree(&self) -> usize {
        self.gen_degree.max(self.rel_degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    Fd,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedModule {
    pub kind: CatKind,
    pub window: usize,
    pub dims: Vec<usize>,
    /// FI: `fi_gens[n]` holds `n − 1` matrices (none for `n ≤ 1`). Empty for OI.
    pub fi_gens: Vec<Vec<RationalMatrix>>,
    /// `maps[n]` for `n < window`: `[ι_n]` for FI, `[A_{n,1}, …, A_{n,n+1}]` for OI.
    pub maps: Vec<Vec<RationalMatrix>>,
    pub bounds: Option<Bounds>,
    pub support: Support,
}

/// Zero-based image tuple of the permutation `σ ∈ S_{n+1}` with `σ ∘ ι_n = α_{n,i}`.
pub fn coface_perm(n: usize, i: usize) -> Perm {
    let mut s: Perm = (0..n).map(|k| if k + 1 < i { k } else { k + 1 }).collect();
    s.push(i - 1);
    s
}

fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub degree: Option<usize>,
    pub violation: Option<String>,
}

impl ValidationReport {
    fn ok() -> Self {
        ValidationReport { passed: true, degree: None, violation: None }
    }

    fn fail(degree: usize, msg: impl Into<String>) -> Self {
        ValidationReport { passed: false, degree: Some(degree), violation: Some(msg.into()) }
    }
}

/// Defects of the comparison between `V_n` and the colimit of lower degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDefects {
    /// `dim V_n − dim(image of lower degrees)`.
    pub new_generators: Vec<usize>,
    /// `dim(colimit) − dim(image)`.
    pub new_relations: Vec<usize>,
}

impl DegreeDefects {
    pub fn gen_degree(&self) -> usize {
        self.new_generators.iter().rposition(|&d| d > 0).unwrap_or(0)
    }

    pub fn rel_degree(&self) -> usize {
        let g = self.gen_degree();
        let r = self.new_relations.iter().rposition(|&d| d > 0).unwrap_or(0);
        g.max(r)
    }

    /// Bounds are only reported when the top degree shows no defect.
    pub fn bounds(&self) -> Option<Bounds> {
        let top = self.new_generators.len() - 1;
        if self.new_generators[top] > 0 || self.new_relations[top] > 0 {
            return None;
        }
        Some(Bounds { gen_degree: self.gen_degree(), rel_degree: self.rel_degree() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub degree: usize,
    pub dim: usize,
    pub generators: Vec<RationalMatrix>,
}

impl TruncatedModule {
    /// Assembles a module after checking matrix shapes; support is inferred.
    pub fn new(
        kind: CatKind,
        window: usize,
        dims: Vec<usize>,
        fi_gens: Vec<Vec<RationalMatrix>>,
        maps: Vec<Vec<RationalMatrix>>,
        bounds: Option<Bounds>,
    ) -> Result<Self> {
        let support = if dims.last().copied().unwrap_or(0) == 0 { Support::Fd } else { Support::Open };
        let m = TruncatedModule { kind, window, dims, fi_gens, maps, bounds, support };
        m.check_shapes()?;
        Ok(m)
    }

    pub fn zero(kind: CatKind, window: usize) -> Self {
        let dims = vec![0; window + 1];
        let fi_gens = match kind {
            CatKind::Fi => (0..=window).map(|n| vec![RationalMatrix::zeros(0, 0); n.saturating_sub(1)]).collect(),
            CatKind::Oi => Vec::new(),
        };
        let maps = (0..window)
            .map(|n| match kind {
                CatKind::Fi => vec![RationalMatrix::zeros(0, 0)],
                CatKind::Oi => vec![RationalMatrix::zeros(0, 0); n + 1],
            })
            .collect();
        TruncatedModule {
            kind,
            window,
            dims,
            fi_gens,
            maps,
            bounds: Some(Bounds { gen_degree: 0, rel_degree: 0 }),
            support: Support::Fd,
        }
    }

    pub fn check_shapes(&self) -> Result<()> {
        let n_deg = self.window + 1;
        if self.dims.len() != n_deg {
            return Err(Error::Shape(format!("{} dims for window {}", self.dims.len(), self.window)));
        }
        if self.maps.len() != self.window {
            return Err(Error::Shape(format!("{} map degrees for window {}", self.maps.len(), self.window)));
        }
        match self.kind {
            CatKind::Fi => {
                if self.fi_gens.len() != n_deg {
                    return Err(Error::Shape(format!("{} generator degrees for window {}", self.fi_gens.len(), self.window)));
                }
                for (n, gs) in self.fi_gens.iter().enumerate() {
                    if gs.len() != n.saturating_sub(1) {
                        return Err(Error::Shape(format!("degree {n} has {} generators", gs.len())));
                    }
                    for g in gs {
                        if g.rows() != self.dims[n] || g.cols() != self.dims[n] {
                            return Err(Error::Shape(format!("degree {n} generator is {}x{}", g.rows(), g.cols())));
                        }
                    }
                }
            }
            CatKind::Oi => {
                if !self.fi_gens.is_empty() {
                    return Err(Error::Shape("OI modules carry no transposition matrices".into()));
                }
            }
        }
        for (n, ms) in self.maps.iter().enumerate() {
            let expected = match self.kind {
                CatKind::Fi => 1,
                CatKind::Oi => n + 1,
            };
            if ms.len() != expected {
                return Err(Error::Shape(format!("degree {n} has {} structure maps, expected {expected}", ms.len())));
            }
            for m in ms {
                if m.rows() != self.dims[n + 1] || m.cols() != self.dims[n] {
                    return Err(Error::Shape(format!(
                        "structure map at degree {n} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        self.dims[n + 1],
                        self.dims[n]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn gens(&self, n: usize) -> &[RationalMatrix] {
        match self.kind {
            CatKind::Fi => &self.fi_gens[n],
            CatKind::Oi => &[],
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.window {
            return Err(Error::Window(format!("degree {n} outside window {}", self.window)));
        }
        Ok(())
    }

    pub fn evaluate_degree(&self, x: usize) -> Result<DegreeData> {
        self.check_degree(x)?;
        Ok(DegreeData { degree: x, dim: self.dims[x], generators: self.gens(x).to_vec() })
    }

    /// `ρ_n(σ) v`; FI only.
    pub fn apply_perm(&self, n: usize, sigma: &[usize], v: &[Q]) -> Vec<Q> {
        apply_perm(&self.fi_gens[n], sigma, v)
    }

    /// `V(α_{n,i}) v`.
    pub fn apply_coface(&self, n: usize, i: usize, v: &[Q]) -> Vec<Q> {
        match self.kind {
            CatKind::Fi => {
                let w = self.maps[n][0].mul_vec(v);
                self.apply_perm(n + 1, &coface_perm(n, i), &w)
            }
            CatKind::Oi => self.maps[n][i - 1].mul_vec(v),
        }
    }

    /// Matrix of `V(α_{n,i})`.
    pub fn coface_matrix(&self, n: usize, i: usize) -> RationalMatrix {
        match self.kind {
            CatKind::Oi => self.maps[n][i - 1].clone(),
            CatKind::Fi => {
                let cols: Vec<Vec<Q>> =
                    (0..self.dims[n]).map(|c| self.apply_coface(n, i, &unit_vec(self.dims[n], c))).collect();
                RationalMatrix::from_columns(self.dims[n + 1], &cols)
            }
        }
    }

    /// `V(f) v` via the canonical factorization of `f`.
    pub fn act(&self, f: &Injection, v: &[Q]) -> Result<Vec<Q>> {
        self.check_degree(f.n)?;
        if v.len() != self.dims[f.m] {
            return Err(Error::Shape(format!("vector of length {} at degree {} of dimension {}", v.len(), f.m, self.dims[f.m])));
        }
        match canonical_factorization(self.kind, f)? {
            Factorization::Fi { sigma, m } => {
                let mut w = v.to_vec();
                for n in m..f.n {
                    w = self.maps[n][0].mul_vec(&w);
                }
                Ok(self.apply_perm(f.n, &sigma, &w))
            }
            Factorization::Oi { cofaces, .. } => {
                Ok(cofaces.iter().fold(v.to_vec(), |w, &(n, i)| self.maps[n][i - 1].mul_vec(&w)))
            }
        }
    }

    /// Composite structure map `V_n → V_N` along the standard inclusion.
    pub fn standard_composite(&self, n: usize, top: usize) -> RationalMatrix {
        let mut m = RationalMatrix::identity(self.dims[n]);
        for k in n..top {
            m = self.maps[k][0].mul(&m);
        }
        m
    }

    pub fn validate(&self) -> ValidationReport {
        if let Err(e) = self.check_shapes() {
            return ValidationReport::fail(0, e.to_string());
        }
        match self.kind {
            CatKind::Fi => {
                for n in 0..=self.window {
                    if let Err(e) = check_coxeter(self.dims[n], &self.fi_gens[n]) {
                        return ValidationReport::fail(n, format!("degree {n}: {e}"));
                    }
                }
                for n in 0..self.window {
                    let iota = &self.maps[n][0];
                    for j in 1..n {
                        if iota.mul(&self.fi_gens[n][j - 1]) != self.fi_gens[n + 1][j - 1].mul(iota) {
                            return ValidationReport::fail(n, format!("equivariance fails: ι_{n} s_{j} ≠ s_{j} ι_{n}"));
                        }
                    }
                    if n + 2 <= self.window {
                        let two = self.maps[n + 1][0].mul(iota);
                        if self.fi_gens[n + 2][n].mul(&two) != two {
                            return ValidationReport::fail(
                                n,
                                format!("coherence fails: s_{} ι_{} ι_{n} ≠ ι_{} ι_{n}", n + 1, n + 1, n + 1),
                            );
                        }
                    }
                }
            }
            CatKind::Oi => {
                for n in 0..self.window.saturating_sub(1) {
                    for j in 1..=n + 2 {
                        for i in 1..j {
                            let lhs = self.maps[n + 1][j - 1].mul(&self.maps[n][i - 1]);
                            let rhs = self.maps[n + 1][i - 1].mul(&self.maps[n][j - 2]);
                            if lhs != rhs {
                                return ValidationReport::fail(
                                    n,
                                    format!("coface identity fails: A_{},{j} A_{n},{i} ≠ A_{},{i} A_{n},{}", n + 1, n + 1, j - 1),
                                );
                            }
                        }
                    }
                }
            }
        }
        if let Some(b) = self.bounds {
            for n in (b.gen_degree + 1)..=self.window {
                if self.lower_image(n).dim() < self.dims[n] {
                    return ValidationReport::fail(
                        n,
                        format!("degree {n} is not generated by lower degrees although gen_degree = {}", b.gen_degree),
                    );
                }
            }
        }
        ValidationReport::ok()
    }

    /// Columns `V(α_{n−1,p}) e_v` for `p ∈ [n]` and basis vectors `v` of `V_{n−1}`.
    fn lower_columns(&self, n: usize) -> Vec<Vec<Q>> {
        if n == 0 {
            return Vec::new();
        }
        let d = self.dims[n - 1];
        let mut out = Vec::with_capacity(n * d);
        for p in 1..=n {
            for c in 0..d {
                out.push(self.apply_coface(n - 1, p, &unit_vec(d, c)));
            }
        }
        out
    }

    /// Span of the images of all morphisms from lower degrees.
    pub fn lower_image(&self, n: usize) -> Subspace {
        Subspace::from_vectors(self.dims[n], &self.lower_columns(n))
    }

    /// Compares each degree with the colimit of the lower degrees: the cokernel
    /// counts new generators and the kernel counts new relations.
    pub fn degree_defects(&self) -> DegreeDefects {
        let mut new_generators = Vec::with_capacity(self.window + 1);
        let mut new_relations = Vec::with_capacity(self.window + 1);
        for n in 0..=self.window {
            let image_rank = self.lower_image(n).dim();
            new_generators.push(self.dims[n] - image_rank);
            if n == 0 {
                new_relations.push(0);
                continue;
            }
            let d1 = self.dims[n - 1];
            let width = n * d1;
            let mut rel = Echelon::new(width);
            if n >= 2 {
                let d2 = self.dims[n - 2];
                for p in 1..=n {
                    for q in (p + 1)..=n {
                        for w in 0..d2 {
                            let e = unit_vec(d2, w);
                            let a = self.apply_coface(n - 2, q - 1, &e);
                            let b = self.apply_coface(n - 2, p, &e);
                            let mut row: SparseRow = Vec::new();
                            for (k, x) in a.into_iter().enumerate() {
                                if !x.is_zero() {
                                    row.push(((p - 1) * d1 + k, x));
                                }
                            }
                            for (k, x) in b.into_iter().enumerate() {
                                if !x.is_zero() {
                                    row.push(((q - 1) * d1 + k, -x));
                                }
                            }
                            rel.insert(row);
                        }
                    }
                }
            }
            new_relations.push(width - rel.rank() - image_rank);
        }
        DegreeDefects { new_generators, new_relations }
    }

    /// Recomputes `bounds` from the window; `None` when the top degree still has a defect.
    pub fn with_computed_bounds(mut self) -> Self {
        self.bounds = self.degree_defects().bounds();
        self
    }

    /// Keeps degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.window {
            return Err(Error::Window(format!("cannot truncate window {} to {n}", self.window)));
        }
        let fi_gens = if self.kind == CatKind::Fi { self.fi_gens[..=n].to_vec() } else { Vec::new() };
        let bounds = self.bounds.filter(|b| b.rel_degree <= n);
        let mut m = TruncatedModule::new(self.kind, n, self.dims[..=n].to_vec(), fi_gens, self.maps[..n].to_vec(), bounds)?;
        if self.support == Support::Fd {
            m.support = Support::Fd;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let raw = RawModule::from(self);
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawModule = serde_json::from_str(s).map_err(|e| Error::Parse(format!("module JSON: {e}")))?;
        raw.into_module()
    }
}

type RawMatrix = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
struct RawModule {
    kind: CatKind,
    window: usize,
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fi_gens: Option<Vec<Vec<RawMatrix>>>,
    maps: Vec<Vec<RawMatrix>>,
    bounds: Option<Bounds>,
    support: Support,
}

fn raw_matrix(m: &RationalMatrix) -> RawMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().map(q_to_string).collect()).collect()
}

fn parse_matrix(raw: &RawMatrix, rows: usize, cols: usize, what: &str) -> Result<RationalMatrix> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let entries = raw.iter().map(|r| r.iter().map(|s| q_from_str(s)).collect::<Result<Vec<Q>>>()).collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows, cols, entries)
}

impl From<&TruncatedModule> for RawModule {
    fn from(m: &TruncatedModule) -> Self {
        RawModule {
            kind: m.kind,
            window: m.window,
            dims: m.dims.clone(),
            fi_gens: match m.kind {
                CatKind::Fi => Some(m.fi_gens.iter().map(|gs| gs.iter().map(raw_matrix).collect()).collect()),
                CatKind::Oi => None,
            },
            maps: m.maps.iter().map(|ms| ms.iter().map(raw_matrix).collect()).collect(),
            bounds: m.bounds,
            support: m.support,
        }
    }
}

impl RawModule {
    fn into_module(self) -> Result<TruncatedModule> {
        let n_deg = self.window + 1;
        if self.dims.len() != n_deg {
            return Err(Error::Shape(format!("{} dims for window {}", self.dims.len(), self.window)));
        }
        if self.maps.len() != self.window {
            return Err(Error::Shape(format!("{} map degrees for window {}", self.maps.len(), self.window)));
        }
        let fi_gens = match (self.kind, &self.fi_gens) {
            (CatKind::Fi, Some(gs)) => {
                if gs.len() != n_deg {
                    return Err(Error::Shape(format!("{} generator degrees for window {}", gs.len(), self.window)));
                }
                gs.iter()
                    .enumerate()
                    .map(|(n, g)| {
                        g.iter()
                            .enumerate()
                            .map(|(j, m)| parse_matrix(m, self.dims[n], self.dims[n], &format!("fi_gens[{n}][{j}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            (CatKind::Fi, None) => return Err(Error::Parse("FI module without fi_gens".into())),
            (CatKind::Oi, Some(_)) => return Err(Error::Parse("OI module with fi_gens".into())),
            (CatKind::Oi, None) => Vec::new(),
        };
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(n, ms)| {
                ms.iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(m, self.dims[n + 1], self.dims[n], &format!("maps[{n}][{i}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = TruncatedModule::new(self.kind, self.window, self.dims, fi_gens, maps, self.bounds)?;
        m.support = self.support;
        Ok(m)
    }
}

/// The representable module `P(m)`, basis `hom_set(kind, m, n)` in degree `n`.
pub fn free_module(kind: CatKind, m: usize, window: usize) -> Result<TruncatedModule> {
    if m > window {
        return Err(Error::Window(format!("P({m}) needs window at least {m}, got {window}")));
    }
    let bases: Vec<Vec<Injection>> = (0..=window).map(|n| hom_set(kind, m, n)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let postcompose = |g: &Injection, n: usize| -> RationalMatrix {
        let mut mat = RationalMatrix::zeros(dims[g.n], dims[n]);
        for (c, f) in bases[n].iter().enumerate() {
            let h = crate::skelcat::compose(g, f).expect("composable");
            mat.set(hom_index(kind, &h), c, Q::one());
        }
        mat
    };
    let fi_gens = match kind {
        CatKind::Fi => (0..=window)
            .map(|n| (1..n).map(|i| postcompose(&Injection::from_perm(&crate::symrep::adjacent(n, i)), n)).collect())
            .collect(),
        CatKind::Oi => Vec::new(),
    };
    let maps = (0..window)
        .map(|n| match kind {
            CatKind::Fi => vec![postcompose(&Injection::standard(n, n + 1), n)],
            CatKind::Oi => (1..=n + 1).map(|i| postcompose(&Injection::coface(n, i), n)).collect(),
        })
        .collect();
    TruncatedModule::new(kind, window, dims, fi_gens, maps, Some(Bounds { gen_degree: m, rel_degree: m }))
}

/// `P(λ)`: basis of degree `n` is (|λ|-subset of `[n]`) × (seminormal basis of `L_λ`).
pub fn induced_projective(lambda: &Partition, window: usize) -> Result<TruncatedModule> {
    let m = lambda.size();
    if m > window {
        return Err(Error::Window(format!("P({lambda}) needs window at least {m}, got {window}")));
    }
    let irrep = irrep_matrices(lambda);
    let f = irrep.dim();
    let subsets: Vec<Vec<Injection>> = (0..=window).map(|n| hom_set(CatKind::Oi, m, n)).collect();
    let dims: Vec<usize> = subsets.iter().map(|s| s.len() * f).collect();
    let fi_gens = (0..=window)
        .map(|n| {
            (1..n)
                .map(|i| {
                    let mut mat = RationalMatrix::zeros(dims[n], dims[n]);
                    for (a, sub) in subsets[n].iter().enumerate() {
                        let pos_i = sub.values.iter().position(|&v| v == i);
                        let pos_j = sub.values.iter().position(|&v| v == i + 1);
                        match (pos_i, pos_j) {
                            (Some(k), Some(_)) => {
                                // Both letters in A: they occupy consecutive positions k, k+1.
                                let g = &irrep.generators[k];
                                for r in 0..f {
                                    for c in 0..f {
                                        let x = g.get(r, c);
                                        if !x.is_zero() {
                                            mat.set(a * f + r, a * f + c, x.clone());
                                        }
                                    }
                                }
                            }
                            _ => {
                                let image: Vec<usize> = sub
                                    .values
                                    .iter()
                                    .map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v })
                                    .collect();
                                let b = hom_index(CatKind::Oi, &Injection::onto_sorted(n, &image));
                                for r in 0..f {
                                    mat.set(b * f + r, a * f + r, Q::one());
                                }
                            }
                        }
                    }
                    mat
                })
                .collect()
        })
        .collect();
    let maps = (0..window)
        .map(|n| {
            let mut mat = RationalMatrix::zeros(dims[n + 1], dims[n]);
            for (a, sub) in subsets[n].iter().enumerate() {
                let b = hom_index(CatKind::Oi, &Injection::onto_sorted(n + 1, &sub.values));
                for r in 0..f {
                    mat.set(b * f + r, a * f + r, Q::one());
                }
            }
            vec![mat]
        })
        .collect();
    TruncatedModule::new(CatKind::Fi, window, dims, fi_gens, maps, Some(Bounds { gen_degree: m, rel_degree: m }))
}

fn concentrated(kind: CatKind, degree: usize, window: usize, gens: Vec<RationalMatrix>, dim: usize) -> Result<TruncatedModule> {
    if degree > window {
        return Err(Error::Window(format!("degree {degree} outside window {window}")));
    }
    let mut m = TruncatedModule::zero(kind, window);
    m.dims[degree] = dim;
    if kind == CatKind::Fi {
        m.fi_gens[degree] = gens;
    }
    for n in 0..window {
        for a in m.maps[n].iter_mut() {
            *a = RationalMatrix::zeros(m.dims[n + 1], m.dims[n]);
        }
    }
    m.bounds = if degree < window { Some(Bounds { gen_degree: degree, rel_degree: degree + 1 }) } else { None };
    m.support = Support::Fd;
    m.check_shapes()?;
    Ok(m)
}

/// `L_λ` placed in degree `|λ|` with all structure maps zero.
pub fn simple_at(lambda: &Partition, window: usize) -> Result<TruncatedModule> {
    let irrep = irrep_matrices(lambda);
    let d = hook_dimension(lambda) as usize;
    concentrated(CatKind::Fi, lambda.size(), window, irrep.generators, d)
}

/// The one-dimensional OI-module concentrated in degree `m`.
pub fn simple_at_oi(m: usize, window: usize) -> Result<TruncatedModule> {
    concentrated(CatKind::Oi, m, window, Vec::new(), 1)
}

/// An FI-module concentrated in one degree with the given `S_n`-representation.
pub fn concentrated_fi(degree: usize, window: usize, gens: Vec<RationalMatrix>, dim: usize) -> Result<TruncatedModule> {
    check_coxeter(dim, &gens)?;
    concentrated(CatKind::Fi, degree, window, gens, dim)
}

pub fn direct_sum(mods: &[&TruncatedModule]) -> Result<TruncatedModule> {
    let first = mods.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
    let (kind, window) = (first.kind, first.window);
    if mods.iter().any(|m| m.kind != kind || m.window != window) {
        return Err(Error::Invalid("direct summands must share kind and window".into()));
    }
    let dims = (0..=window).map(|n| mods.iter().map(|m| m.dims[n]).sum()).collect();
    let fi_gens = match kind {
        CatKind::Fi => (0..=window)
            .map(|n| {
                (0..n.saturating_sub(1))
                    .map(|j| RationalMatrix::block_diag(&mods.iter().map(|m| &m.fi_gens[n][j]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect(),
        CatKind::Oi => Vec::new(),
    };
    let maps = (0..window)
        .map(|n| {
            (0..first.maps[n].len())
                .map(|i| RationalMatrix::block_diag(&mods.iter().map(|m| &m.maps[n][i]).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let bounds = if mods.iter().all(|m| m.bounds.is_some()) {
        Some(Bounds {
            gen_degree: mods.iter().map(|m| m.bounds.unwrap().gen_degree).max().unwrap(),
            rel_degree: mods.iter().map(|m| m.bounds.unwrap().rel_degree).max().unwrap(),
        })
    } else {
        None
    };
    let mut out = TruncatedModule::new(kind, window, dims, fi_gens, maps, bounds)?;
    if mods.iter().all(|m| m.support == Support::Fd) {
        out.support = Support::Fd;
    }
    Ok(out)
}

/// `(ΣV)_n = V_{n+1}`, with the added point placed last.
///
/// For FI the structure map is `V(ι_n ⊔ id) = ρ(s_{n+1}) ι_{n+1}`, since the
/// added point `n+1` must go to `n+2`.
pub fn shift(v: &TruncatedModule) -> Result<TruncatedModule> {
    if v.window == 0 {
        return Err(Error::Window("cannot shift a module with window 0".into()));
    }
    let window = v.window - 1;
    let dims = v.dims[1..].to_vec();
    let (fi_gens, maps) = match v.kind {
        CatKind::Fi => {
            let gens = (0..=window).map(|n| v.fi_gens[n + 1][..n.saturating_sub(1)].to_vec()).collect();
            let maps = (0..window).map(|n| vec![v.fi_gens[n + 2][n].mul(&v.maps[n + 1][0])]).collect();
            (gens, maps)
        }
        CatKind::Oi => {
            let maps = (0..window).map(|n| v.maps[n + 1][..=n].to_vec()).collect();
            (Vec::new(), maps)
        }
    };
    Ok(TruncatedModule::new(v.kind, window, dims, fi_gens, maps, None)?.with_computed_bounds())
}

/// Multiplicities of the irreducible `S_n`-representations in `V_n`.
pub fn decompose_degree(v: &TruncatedModule, n: usize) -> Result<BTreeMap<Partition, usize>> {
    if v.kind != CatKind::Fi {
        return Err(Error::Invalid("degreewise decomposition applies to FI-modules".into()));
    }
    v.check_degree(n)?;
    decompose_by_character(v.dims[n], &v.fi_gens[n], n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub source: TruncatedModule,
    pub target: TruncatedModule,
    /// `comps[n]` is `dim W_n × dim V_n`.
    pub comps: Vec<RationalMatrix>,
}

impl ModuleMorphism {
    pub fn new(source: TruncatedModule, target: TruncatedModule, comps: Vec<RationalMatrix>) -> Result<Self> {
        let m = ModuleMorphism { source, target, comps };
        m.check_shapes()?;
        Ok(m)
    }

    fn check_shapes(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if s.kind != t.kind || s.window != t.window {
            return Err(Error::Invalid("morphism between modules of different kind or window".into()));
        }
        if self.comps.len() != s.window + 1 {
            return Err(Error::Shape(format!("{} components for window {}", self.comps.len(), s.window)));
        }
        for (n, c) in self.comps.iter().enumerate() {
            if c.rows() != t.dims[n] || c.cols() != s.dims[n] {
                return Err(Error::Shape(format!("component {n} is {}x{}", c.rows(), c.cols())));
            }
        }
        Ok(())
    }

    pub fn identity(v: &TruncatedModule) -> Self {
        let comps = v.dims.iter().map(|&d| RationalMatrix::identity(d)).collect();
        ModuleMorphism { source: v.clone(), target: v.clone(), comps }
    }

    pub fn zero(source: &TruncatedModule, target: &TruncatedModule) -> Result<Self> {
        let comps = (0..=source.window).map(|n| RationalMatrix::zeros(target.dim(n), source.dims[n])).collect();
        ModuleMorphism::new(source.clone(), target.clone(), comps)
    }

    /// Checks commutation with every generator and structure map.
    pub fn validate(&self) -> Result<()> {
        self.check_shapes()?;
        let (s, t) = (&self.source, &self.target);
        if s.kind == CatKind::Fi {
            for n in 0..=s.window {
                for j in 0..n.saturating_sub(1) {
                    if self.comps[n].mul(&s.fi_gens[n][j]) != t.fi_gens[n][j].mul(&self.comps[n]) {
                        return Err(Error::Relation(format!("degree {n}: morphism does not commute with s_{}", j + 1)));
                    }
                }
            }
        }
        for n in 0..s.window {
            for (i, (a, b)) in s.maps[n].iter().zip(&t.maps[n]).enumerate() {
                if self.comps[n + 1].mul(a) != b.mul(&self.comps[n]) {
                    return Err(Error::Relation(format!("degree {n}: morphism does not commute with structure map {}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if other.target.dims != self.source.dims || other.target.window != self.source.window {
            return Err(Error::Invalid("morphisms are not composable".into()));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect();
        ModuleMorphism::new(other.source.clone(), self.target.clone(), comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalMatrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_square() && c.is_invertible())
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.comps.iter().map(RationalMatrix::rank).collect()
    }

    pub fn kernel(&self) -> Result<(TruncatedModule, ModuleMorphism)> {
        let spaces = self.comps.iter().map(kernel).collect();
        submodule(&self.source, spaces)
    }

    pub fn cokernel(&self) -> Result<(TruncatedModule, ModuleMorphism)> {
        let spaces = self.comps.iter().map(crate::linalgq::image).collect();
        quotient(&self.target, spaces)
    }

    pub fn image(&self) -> Result<(TruncatedModule, ModuleMorphism)> {
        let spaces = self.comps.iter().map(crate::linalgq::image).collect();
        submodule(&self.target, spaces)
    }
}

fn restricted_matrix(m: &RationalMatrix, from: &Subspace, to: &Subspace, what: &str) -> Result<RationalMatrix> {
    let cols = from
        .basis_vectors()
        .iter()
        .map(|b| to.coords(&m.mul_vec(b)).ok_or_else(|| Error::Invalid(format!("{what} leaves the subspace"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(to.dim(), &cols))
}

/// The submodule with the given degreewise subspaces, and its inclusion.
pub fn submodule(v: &TruncatedModule, spaces: Vec<Subspace>) -> Result<(TruncatedModule, ModuleMorphism)> {
    if spaces.len() != v.window + 1 {
        return Err(Error::Shape(format!("{} subspaces for window {}", spaces.len(), v.window)));
    }
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let fi_gens = match v.kind {
        CatKind::Fi => (0..=v.window)
            .map(|n| {
                v.fi_gens[n]
                    .iter()
                    .enumerate()
                    .map(|(j, g)| restricted_matrix(g, &spaces[n], &spaces[n], &format!("s_{} at degree {n}", j + 1)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
        CatKind::Oi => Vec::new(),
    };
    let maps = (0..v.window)
        .map(|n| {
            v.maps[n]
                .iter()
                .enumerate()
                .map(|(i, a)| restricted_matrix(a, &spaces[n], &spaces[n + 1], &format!("structure map {} at degree {n}", i + 1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = TruncatedModule::new(v.kind, v.window, dims, fi_gens, maps, None)?.with_computed_bounds();
    let comps = spaces.iter().map(|s| s.basis().transpose()).collect();
    let inc = ModuleMorphism::new(sub.clone(), v.clone(), comps)?;
    Ok((sub, inc))
}

/// The quotient by the given degreewise subspaces, and the projection.
///
/// Quotient coordinates are the non-pivot columns of each subspace.
pub fn quotient(v: &TruncatedModule, spaces: Vec<Subspace>) -> Result<(TruncatedModule, ModuleMorphism)> {
    if spaces.len() != v.window + 1 {
        return Err(Error::Shape(format!("{} subspaces for window {}", spaces.len(), v.window)));
    }
    let free: Vec<Vec<usize>> = spaces.iter().map(Subspace::complement_columns).collect();
    let dims: Vec<usize> = free.iter().map(Vec::len).collect();
    let project = |n: usize, x: &[Q]| -> Vec<Q> {
        let r = spaces[n].reduce(x);
        free[n].iter().map(|&c| r[c].clone()).collect()
    };
    let induced = |m: &RationalMatrix, from: usize, to: usize, what: &str| -> Result<RationalMatrix> {
        // Well defined only if m maps the subspace at `from` into the one at `to`.
        for b in spaces[from].basis_vectors() {
            if !is_zero_vec(&project(to, &m.mul_vec(&b))) {
                return Err(Error::Invalid(format!("{what} does not preserve the subspace")));
            }
        }
        let cols: Vec<Vec<Q>> =
            free[from].iter().map(|&c| project(to, &m.mul_vec(&unit_vec(v.dims[from], c)))).collect();
        Ok(RationalMatrix::from_columns(dims[to], &cols))
    };
    let fi_gens = match v.kind {
        CatKind::Fi => (0..=v.window)
            .map(|n| {
                v.fi_gens[n]
                    .iter()
                    .enumerate()
                    .map(|(j, g)| induced(g, n, n, &format!("s_{} at degree {n}", j + 1)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
        CatKind::Oi => Vec::new(),
    };
    let maps = (0..v.window)
        .map(|n| {
            v.maps[n]
                .iter()
                .enumerate()
                .map(|(i, a)| induced(a, n, n + 1, &format!("structure map {} at degree {n}", i + 1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let quot = TruncatedModule::new(v.kind, v.window, dims.clone(), fi_gens, maps, None)?.with_computed_bounds();
    let comps = (0..=v.window)
        .map(|n| {
            let cols: Vec<Vec<Q>> = (0..v.dims[n]).map(|c| project(n, &unit_vec(v.dims[n], c))).collect();
            RationalMatrix::from_columns(dims[n], &cols)
        })
        .collect();
    let proj = ModuleMorphism::new(v.clone(), quot.clone(), comps)?;
    Ok((quot, proj))
}

/// The morphism `P(m) → V` sending the identity of `[m]` to `x ∈ V_m`.
pub fn yoneda_map(v: &TruncatedModule, m: usize, x: &[Q]) -> Result<ModuleMorphism> {
    let p = free_module(v.kind, m, v.window)?;
    let comps = (0..=v.window)
        .map(|n| {
            let cols = hom_set(v.kind, m, n).iter().map(|f| v.act(f, x)).collect::<Result<Vec<_>>>()?;
            Ok(RationalMatrix::from_columns(v.dims[n], &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleMorphism::new(p, v.clone(), comps)
}

/// Sums morphisms into a common target from a direct sum of their sources.
pub fn copair(maps: &[ModuleMorphism]) -> Result<ModuleMorphism> {
    let first = maps.first().ok_or_else(|| Error::Invalid("empty copairing".into()))?;
    let sources: Vec<&TruncatedModule> = maps.iter().map(|m| &m.source).collect();
    let source = direct_sum(&sources)?;
    let comps = (0..=first.target.window)
        .map(|n| {
            let mut out = RationalMatrix::zeros(first.target.dims[n], source.dims[n]);
            let mut off = 0;
            for m in maps {
                let c = &m.comps[n];
                for r in 0..c.rows() {
                    for k in 0..c.cols() {
                        let x = c.get(r, k);
                        if !x.is_zero() {
                            out.set(r, off + k, x.clone());
                        }
                    }
                }
                off += c.cols();
            }
            out
        })
        .collect();
    ModuleMorphism::new(source, first.target.clone(), comps)
}

/// A basis of all morphisms `V → W` on the window.
pub fn hom_space(v: &TruncatedModule, w: &TruncatedModule) -> Result<Vec<ModuleMorphism>> {
    if v.kind != w.kind || v.window != w.window {
        return Err(Error::Invalid("hom space between modules of different kind or window".into()));
    }
    let window = v.window;
    let mut offsets = Vec::with_capacity(window + 2);
    let mut total = 0;
    for n in 0..=window {
        offsets.push(total);
        total += v.dims[n] * w.dims[n];
    }
    // Unknown M_n[r][c] sits at offsets[n] + r * dim V_n + c.
    let var = |n: usize, r: usize, c: usize| offsets[n] + r * v.dims[n] + c;
    let mut e = Echelon::new(total);
    let mut push = |terms: BTreeMap<usize, Q>| {
        let row: SparseRow = terms.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if !row.is_empty() {
            e.insert(row);
        }
    };
    // M_to · a = b · M_from for a: V_from → V_to and b: W_from → W_to.
    let mut square = |from: usize, to: usize, a: &RationalMatrix, b: &RationalMatrix| {
        for r in 0..w.dims[to] {
            for c in 0..v.dims[from] {
                let mut terms: BTreeMap<usize, Q> = BTreeMap::new();
                for k in 0..v.dims[to] {
                    let x = a.get(k, c);
                    if !x.is_zero() {
                        *terms.entry(var(to, r, k)).or_insert_with(Q::zero) += x;
                    }
                }
                for k in 0..w.dims[from] {
                    let x = b.get(r, k);
                    if !x.is_zero() {
                        *terms.entry(var(from, k, c)).or_insert_with(Q::zero) -= x;
                    }
                }
                push(terms);
            }
        }
    };
    if v.kind == CatKind::Fi {
        for n in 0..=window {
            for j in 0..n.saturating_sub(1) {
                square(n, n, &v.fi_gens[n][j], &w.fi_gens[n][j]);
            }
        }
    }
    for n in 0..window {
        for i in 0..v.maps[n].len() {
            square(n, n + 1, &v.maps[n][i], &w.maps[n][i]);
        }
    }
    e.null_space()
        .into_iter()
        .map(|sol| {
            let dense = dense_from_sparse(total, &sol);
            let comps = (0..=window)
                .map(|n| {
                    let mut m = RationalMatrix::zeros(w.dims[n], v.dims[n]);
                    for r in 0..w.dims[n] {
                        for c in 0..v.dims[n] {
                            m.set(r, c, dense[var(n, r, c)].clone());
                        }
                    }
                    m
                })
                .collect();
            ModuleMorphism::new(v.clone(), w.clone(), comps)
        })
        .collect()
}

/// An isomorphism `V → W` when the morphism space is one-dimensional, or when
/// some basis element is already invertible.
pub fn find_isomorphism(v: &TruncatedModule, w: &TruncatedModule) -> Result<Option<ModuleMorphism>> {
    if v.dims != w.dims {
        return Ok(None);
    }
    Ok(hom_space(v, w)?.into_iter().find(ModuleMorphism::is_iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalgq::q;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn map_of(m: &BTreeMap<Partition, usize>) -> Vec<(String, usize)> {
        m.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn free_modules_have_the_right_dimensions_and_validate() {
        let p1 = free_module(CatKind::Fi, 1, 5).unwrap();
        assert_eq!(p1.dims, vec![0, 1, 2, 3, 4, 5]);
        assert!(p1.validate().passed);
        let p0 = free_module(CatKind::Fi, 0, 5).unwrap();
        assert_eq!(p0.dims, vec![1; 6]);
        assert!(p0.maps.iter().all(|m| m[0] == RationalMatrix::identity(1)));
        let oi = free_module(CatKind::Oi, 2, 6).unwrap();
        assert_eq!(oi.dims[4], 6);
        assert!(oi.validate().passed);
        assert_eq!(free_module(CatKind::Fi, 2, 4).unwrap().evaluate_degree(4).unwrap().dim, 12);
        assert!(free_module(CatKind::Fi, 3, 2).is_err());
    }

    #[test]
    fn corrupted_inclusion_is_located() {
        let mut p1 = free_module(CatKind::Fi, 1, 5).unwrap();
        p1.maps[2][0].set(0, 0, q(2));
        let r = p1.validate();
        assert!(!r.passed);
        assert_eq!(r.degree, Some(2));
        assert!(r.violation.unwrap().contains("equivariance"));
    }

    #[test]
    fn induced_projectives_decompose_by_pieri() {
        let p2 = induced_projective(&p("2"), 5).unwrap();
        assert!(p2.validate().passed);
        assert_eq!(p2.dims[4], 6);
        assert_eq!(map_of(&decompose_degree(&p2, 4).unwrap()), vec![("4".into(), 1), ("3,1".into(), 1), ("2,2".into(), 1)]);
        let p1 = induced_projective(&p("1"), 4).unwrap();
        assert_eq!(map_of(&decompose_degree(&p1, 3).unwrap()), vec![("3".into(), 1), ("2,1".into(), 1)]);
        assert_eq!(induced_projective(&Partition::empty(), 4).unwrap(), free_module(CatKind::Fi, 0, 4).unwrap());
        let p21 = induced_projective(&p("2,1"), 5).unwrap();
        assert!(p21.validate().passed);
        for n in 3..=5 {
            let dec = decompose_degree(&p21, n).unwrap();
            let expected = crate::combinat::add_boxes_distinct_columns(&p("2,1"), n - 3);
            assert_eq!(dec.keys().cloned().collect::<Vec<_>>().len(), expected.len());
            assert!(dec.values().all(|&m| m == 1));
        }
    }

    #[test]
    fn simple_modules_and_decomposition() {
        let s = simple_at(&p("1"), 4).unwrap();
        assert_eq!(s.dims, vec![0, 1, 0, 0, 0]);
        assert_eq!(s.support, Support::Fd);
        assert_eq!(simple_at(&p("2,1"), 5).unwrap().dims[3], 2);
        assert_eq!(simple_at_oi(0, 3).unwrap().dims, vec![1, 0, 0, 0]);
        let p1 = free_module(CatKind::Fi, 1, 4).unwrap();
        assert_eq!(map_of(&decompose_degree(&p1, 3).unwrap()), vec![("3".into(), 1), ("2,1".into(), 1)]);
        let p0 = free_module(CatKind::Fi, 0, 5).unwrap();
        assert_eq!(map_of(&decompose_degree(&p0, 5).unwrap()), vec![("5".into(), 1)]);
        assert!(decompose_degree(&s, 3).unwrap().is_empty());
    }

    #[test]
    fn act_examples() {
        let p1 = free_module(CatKind::Fi, 1, 4).unwrap();
        let f = Injection::new(1, 3, vec![3]).unwrap();
        let out = p1.act(&f, &[q(1)]).unwrap();
        let target = hom_index(CatKind::Fi, &f);
        assert_eq!(out, unit_vec(3, target));
        let v = vec![q(1), q(-2)];
        assert_eq!(p1.act(&Injection::identity(2), &v).unwrap(), v);
        assert_eq!(p1.act(&Injection::standard(2, 3), &v).unwrap(), p1.maps[2][0].mul_vec(&v));
    }

    #[test]
    fn act_agrees_with_every_factorization() {
        // σ ∘ ι^{n−m} = f for every σ agreeing with the canonical one on [m].
        let v = induced_projective(&p("1,1"), 5).unwrap();
        let x: Vec<Q> = (0..v.dims[2]).map(|i| q(i as i64 + 1)).collect();
        for f in hom_set(CatKind::Fi, 2, 4) {
            let expected = v.act(&f, &x).unwrap();
            let lifted = v.standard_composite(2, 4).mul_vec(&x);
            for sigma in crate::symrep::all_perms(4) {
                if (0..2).all(|k| sigma[k] + 1 == f.values[k]) {
                    assert_eq!(v.apply_perm(4, &sigma, &lifted), expected);
                }
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let p0 = free_module(CatKind::Fi, 0, 4).unwrap();
        let id = ModuleMorphism::identity(&p0);
        assert!(id.kernel().unwrap().0.is_zero());
        // Projection of P(0) onto its degree-zero piece.
        let s0 = simple_at(&Partition::empty(), 4).unwrap();
        let mut comps: Vec<RationalMatrix> = (0..=4).map(|n| RationalMatrix::zeros(s0.dims[n], 1)).collect();
        comps[0] = RationalMatrix::identity(1);
        let ev = ModuleMorphism::new(p0.clone(), s0, comps).unwrap();
        ev.validate().unwrap();
        let (k, inc) = ev.kernel().unwrap();
        assert_eq!(k.dims, vec![0, 1, 1, 1, 1]);
        assert!(k.validate().passed);
        assert!(k.maps[1..].iter().all(|m| m[0] == RationalMatrix::identity(1)));
        assert!(ev.compose(&inc).unwrap().is_zero());
    }

    #[test]
    fn cokernel_of_socle_inclusion_has_dims_one() {
        // The socle of P((1)) is spanned by the differences e_1 − e_k.
        let pl = induced_projective(&p("1"), 4).unwrap();
        let std_part: Vec<Subspace> = (0..=4)
            .map(|n| {
                let vs: Vec<Vec<Q>> = (1..n)
                    .map(|k| {
                        let mut v = vec![Q::zero(); n];
                        v[0] = q(1);
                        v[k] = q(-1);
                        v
                    })
                    .collect();
                Subspace::from_vectors(n, &vs)
            })
            .collect();
        let (sub, inc) = submodule(&pl, std_part).unwrap();
        assert_eq!(sub.dims, vec![0, 0, 1, 2, 3]);
        let (cok, _) = inc.cokernel().unwrap();
        assert_eq!(cok.dims, vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn shift_examples() {
        let p0 = free_module(CatKind::Fi, 0, 5).unwrap();
        let s = shift(&p0).unwrap();
        assert_eq!(s.dims, vec![1; 5]);
        assert!(s.validate().passed);
        let p1 = free_module(CatKind::Fi, 1, 5).unwrap();
        let s1 = shift(&p1).unwrap();
        assert!(s1.validate().passed);
        let sum = direct_sum(&[&free_module(CatKind::Fi, 1, 4).unwrap(), &free_module(CatKind::Fi, 0, 4).unwrap()]).unwrap();
        for n in 0..=4 {
            assert_eq!(decompose_degree(&s1, n).unwrap(), decompose_degree(&sum, n).unwrap());
        }
        let simple = simple_at(&p("2"), 4).unwrap();
        assert_eq!(shift(&simple).unwrap().dims, vec![0, 1, 0, 0]);
        let oi = shift(&free_module(CatKind::Oi, 1, 5).unwrap()).unwrap();
        assert!(oi.validate().passed);
        assert_eq!(oi.dims, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn degree_defects_of_small_modules() {
        let p2 = free_module(CatKind::Fi, 2, 6).unwrap();
        let d = p2.degree_defects();
        assert_eq!(d.bounds(), Some(Bounds { gen_degree: 2, rel_degree: 2 }));
        let oi = free_module(CatKind::Oi, 1, 5).unwrap();
        assert_eq!(oi.degree_defects().bounds(), Some(Bounds { gen_degree: 1, rel_degree: 1 }));
        let s = simple_at(&p("1"), 4).unwrap();
        assert_eq!(s.degree_defects().bounds(), Some(Bounds { gen_degree: 1, rel_degree: 2 }));
        assert_eq!(TruncatedModule::zero(CatKind::Fi, 3).degree_defects().bounds(), Some(Bounds { gen_degree: 0, rel_degree: 0 }));
        assert_eq!(free_module(CatKind::Fi, 3, 3).unwrap().degree_defects().bounds(), None);
    }

    #[test]
    fn hom_spaces_between_projectives() {
        let p1 = free_module(CatKind::Fi, 1, 4).unwrap();
        let p0 = free_module(CatKind::Fi, 0, 4).unwrap();
        // Hom(P(a), P(b)) = P(b)_a.
        assert_eq!(hom_space(&p1, &p1).unwrap().len(), 1);
        assert_eq!(hom_space(&p1, &p0).unwrap().len(), 1);
        assert_eq!(hom_space(&p0, &p1).unwrap().len(), 0);
        let p2 = free_module(CatKind::Fi, 2, 4).unwrap();
        assert_eq!(hom_space(&p1, &p2).unwrap().len(), 0);
        assert_eq!(hom_space(&p2, &p1).unwrap().len(), 2);
        for h in hom_space(&p2, &p1).unwrap() {
            h.validate().unwrap();
        }
        let s = simple_at(&Partition::empty(), 4).unwrap();
        assert!(hom_space(&s, &p0).unwrap().is_empty());
    }

    #[test]
    fn yoneda_maps_are_module_maps() {
        let v = induced_projective(&p("1"), 4).unwrap();
        let y = yoneda_map(&v, 1, &[q(1)]).unwrap();
        y.validate().unwrap();
        assert!(y.is_iso());
        let oi = free_module(CatKind::Oi, 2, 5).unwrap();
        let x: Vec<Q> = (0..oi.dims[3]).map(|i| q(i as i64 - 1)).collect();
        yoneda_map(&oi, 3, &x).unwrap().validate().unwrap();
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        for m in [
            induced_projective(&p("1,1"), 4).unwrap(),
            free_module(CatKind::Oi, 1, 4).unwrap(),
            simple_at(&p("2"), 3).unwrap(),
        ] {
            let s = m.to_json();
            let back = TruncatedModule::from_json(&s).unwrap();
            assert_eq!(back, m);
            assert_eq!(back.to_json(), s);
        }
        assert!(TruncatedModule::from_json("{\"kind\":\"FI\"}").is_err());
    }
}
