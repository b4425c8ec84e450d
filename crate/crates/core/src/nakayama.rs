//! The Nakayama functor `ν`, its inverse, sheafification `ν⁻¹ ∘ ν` with its
//! unit, saturation tests, simple saturated modules and presentation degrees.
//!
//! A morphism `φ : V → P(x)` of FI-modules is stored through the functionals
//! `c^n ∈ V_n^*` giving the coefficient of the standard inclusion `[x] → [n]`
//! in `φ_n(v)`; the coefficient of `σ ∘ std` is then `c^n(ρ(σ⁻¹) v)`. For OI
//! every coefficient functional `c_f` is an unknown.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::linalgq::{Echelon, RationalMatrix, SparseRow, Subspace, Q};
use crate::modcore::{
    concentrated_fi, coface_perm, decompose_degree, free_module, simple_at_oi, Bounds, ModuleMorphism, Support,
    TruncatedModule,
};
use crate::skelcat::{canonical_factorization, hom_index, hom_set, CatKind, Factorization, Injection};
use crate::symrep::{apply_perm, apply_perm_right, inverse_perm, irrep_matrices, Perm};

/// Bounds of `V`, recomputed from the window when absent.
pub fn require_bounds(v: &TruncatedModule) -> Result<Bounds> {
    let b = match v.bounds {
        Some(b) => b,
        None => v
            .degree_defects()
            .bounds()
            .ok_or_else(|| Error::Window(format!("window {} is below the presentation degree", v.window)))?,
    };
    if b.rel_degree > v.window {
        return Err(Error::Window(format!(
            "window {} is below the presentation degree {}",
            v.window, b.rel_degree
        )));
    }
    Ok(b)
}

fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p: Perm = (0..n).collect();
    p.swap(a, b);
    p
}

fn sparse_push(row: &mut BTreeMap<usize, Q>, idx: usize, x: Q) {
    if x.is_zero() {
        return;
    }
    let e = row.entry(idx).or_insert_with(Q::zero);
    *e += x;
    if e.is_zero() {
        row.remove(&idx);
    }
}

fn to_sparse(row: BTreeMap<usize, Q>) -> SparseRow {
    row.into_iter().collect()
}

/// `Hom(V, P(x))` as a subspace of the coefficient-functional unknowns.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub kind: CatKind,
    pub x: usize,
    pub window: usize,
    /// `offsets[n − x]` starts the unknowns of degree `n`; the last entry is the total.
    offsets: Vec<usize>,
    /// Dimension of `V_n`, for `n ≥ x`.
    block: Vec<usize>,
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn layout(v: &TruncatedModule, x: usize) -> (Vec<usize>, Vec<usize>) {
        let mut offsets = Vec::new();
        let mut block = Vec::new();
        let mut total = 0;
        for n in x..=v.window {
            offsets.push(total);
            block.push(v.dims[n]);
            total += match v.kind {
                CatKind::Fi => v.dims[n],
                CatKind::Oi => crate::combinat::binomial(n, x) as usize * v.dims[n],
            };
        }
        offsets.push(total);
        (offsets, block)
    }

    /// Index of the first unknown of `c^n` (FI) or `c_f` with `f` the `idx`-th map (OI).
    fn start(&self, n: usize, idx: usize) -> usize {
        self.offsets[n - self.x] + idx * self.block[n - self.x]
    }

    fn slice<'a>(&self, c: &'a [Q], n: usize, idx: usize) -> &'a [Q] {
        let s = self.start(n, idx);
        &c[s..s + self.block[n - self.x]]
    }

    /// The morphism `V → P(x)` encoded by an unknown vector.
    pub fn to_morphism(&self, v: &TruncatedModule, c: &[Q]) -> Result<ModuleMorphism> {
        let p = free_module(self.kind, self.x, self.window)?;
        let comps = (0..=self.window)
            .map(|n| {
                let maps = hom_set(self.kind, self.x, n);
                let mut m = RationalMatrix::zeros(maps.len(), v.dims[n]);
                for (r, g) in maps.iter().enumerate() {
                    let row = match self.kind {
                        CatKind::Fi => {
                            let Factorization::Fi { sigma, .. } = canonical_factorization(CatKind::Fi, g)? else {
                                unreachable!()
                            };
                            apply_perm_right(&v.fi_gens[n], &inverse_perm(&sigma), self.slice(c, n, 0))
                        }
                        CatKind::Oi => self.slice(c, n, r).to_vec(),
                    };
                    for (k, x) in row.into_iter().enumerate() {
                        m.set(r, k, x);
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleMorphism::new(v.clone(), p, comps)
    }
}

fn empty_hom(v: &TruncatedModule, x: usize) -> HomSpace {
    let (offsets, block) = HomSpace::layout(v, x);
    let total = *offsets.last().unwrap();
    HomSpace { kind: v.kind, x, window: v.window, offsets, block, space: Subspace::zero(total) }
}

/// All morphisms `V → P(x)`, solved on the window.
pub fn hom_to_projective(v: &TruncatedModule, x: usize) -> Result<HomSpace> {
    let b = require_bounds(v)?;
    if x > v.window {
        return Err(Error::Window(format!("P({x}) lies outside window {}", v.window)));
    }
    if x > b.gen_degree {
        return Ok(empty_hom(v, x));
    }
    let mut h = empty_hom(v, x);
    let mut e = Echelon::new(h.unknowns());
    match v.kind {
        CatKind::Fi => fi_hom_equations(v, &h, &mut e),
        CatKind::Oi => oi_hom_equations(v, &h, &mut e),
    }
    h.space = Subspace::from_sparse(h.unknowns(), e.null_space());
    Ok(h)
}

fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Adds the rows `c · M e_b = 0` (plus `extra`) for every basis vector `e_b`.
fn functional_rows(e: &mut Echelon, start: usize, m: &RationalMatrix, extra: impl Fn(usize) -> Option<(usize, Q)>) {
    for col in 0..m.cols() {
        let mut row = BTreeMap::new();
        for r in 0..m.rows() {
            sparse_push(&mut row, start + r, m.get(r, col).clone());
        }
        if let Some((idx, x)) = extra(col) {
            sparse_push(&mut row, idx, x);
        }
        if !row.is_empty() {
            e.insert(to_sparse(row));
        }
    }
}

fn fi_hom_equations(v: &TruncatedModule, h: &HomSpace, e: &mut Echelon) {
    let (x, top) = (h.x, v.window);
    // Invariance under the stabilizer of the standard inclusion.
    for n in x..=top {
        let id = RationalMatrix::identity(v.dims[n]);
        for j in (x + 1)..n {
            let m = v.fi_gens[n][j - 1].sub(&id);
            functional_rows(e, h.start(n, 0), &m, |_| None);
        }
    }
    // c^{n+1} ∘ ι_n = c^n.
    for n in x..top {
        let start_n = h.start(n, 0);
        functional_rows(e, h.start(n + 1, 0), &v.maps[n][0], |b| Some((start_n + b, -Q::one())));
    }
    // Coefficients of injections through the new point vanish on the image of ι_n.
    for n in x.saturating_sub(1)..top {
        if n + 1 < x || x == 0 {
            continue;
        }
        for k in 1..=x {
            let cols: Vec<Vec<Q>> = (0..v.dims[n])
                .map(|b| {
                    let w = v.maps[n][0].mul_vec(&unit_vec(v.dims[n], b));
                    if k == n + 1 {
                        w
                    } else {
                        apply_perm(&v.fi_gens[n + 1], &transposition(n + 1, k - 1, n), &w)
                    }
                })
                .collect();
            let m = RationalMatrix::from_columns(v.dims[n + 1], &cols);
            functional_rows(e, h.start(n + 1, 0), &m, |_| None);
        }
    }
}

fn oi_hom_equations(v: &TruncatedModule, h: &HomSpace, e: &mut Echelon) {
    let (x, top) = (h.x, v.window);
    for n in x.saturating_sub(1)..top {
        if n + 1 < x {
            continue;
        }
        let targets = hom_set(CatKind::Oi, x, n + 1);
        for i in 1..=n + 1 {
            let a = &v.maps[n][i - 1];
            for (idx, f) in targets.iter().enumerate() {
                let source = if f.values.contains(&i) {
                    None
                } else {
                    let g = Injection {
                        m: x,
                        n,
                        values: f.values.iter().map(|&u| if u < i { u } else { u - 1 }).collect(),
                    };
                    Some(h.start(n, hom_index(CatKind::Oi, &g)))
                };
                functional_rows(e, h.start(n + 1, idx), a, |b| source.map(|s| (s + b, -Q::one())));
            }
        }
    }
}

/// `T_ι : Hom(V, P(x+1)) → Hom(V, P(x))`, precomposition on `P` with `ι_x`.
fn fi_t_iota(v: &TruncatedModule, hx: &HomSpace, hx1: &HomSpace) -> Result<RationalMatrix> {
    let x = hx.x;
    let cols = hx1
        .space
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut out = vec![Q::zero(); hx.unknowns()];
            for n in (x + 1)..=v.window {
                let cn = hx1.slice(c, n, 0);
                let s = hx.start(n, 0);
                for p in (x + 1)..=n {
                    let term = if p == x + 1 {
                        cn.to_vec()
                    } else {
                        apply_perm_right(&v.fi_gens[n], &transposition(n, x, p - 1), cn)
                    };
                    for (k, t) in term.into_iter().enumerate() {
                        out[s + k] += t;
                    }
                }
            }
            hx.space.coords(&out).ok_or_else(|| Error::Construction("precomposition left the hom space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(hx.dim(), &cols))
}

/// `T_{s_i}` on `Hom(V, P(x))`: `c^n ↦ c^n ∘ ρ(s_i)`.
fn fi_t_transposition(v: &TruncatedModule, hx: &HomSpace, i: usize) -> Result<RationalMatrix> {
    let cols = hx
        .space
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut out = vec![Q::zero(); hx.unknowns()];
            for n in hx.x..=v.window {
                let s = hx.start(n, 0);
                let w = v.fi_gens[n][i - 1].vec_mul(hx.slice(c, n, 0));
                out[s..s + w.len()].clone_from_slice(&w);
            }
            hx.space.coords(&out).ok_or_else(|| Error::Construction("transposition left the hom space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(hx.dim(), &cols))
}

/// `T_{α_{x,j}} : Hom(V, P(x+1)) → Hom(V, P(x))` for OI.
fn oi_t_coface(v: &TruncatedModule, hx: &HomSpace, hx1: &HomSpace, j: usize) -> Result<RationalMatrix> {
    let x = hx.x;
    let cols = hx1
        .space
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut out = vec![Q::zero(); hx.unknowns()];
            for n in (x + 1)..=v.window {
                for (idx, h) in hom_set(CatKind::Oi, x, n).iter().enumerate() {
                    let lo = if j == 1 { 0 } else { h.values[j - 2] };
                    let hi = if j == x + 1 { n + 1 } else { h.values[j - 1] };
                    let s = hx.start(n, idx);
                    for p in (lo + 1)..hi {
                        let mut vals = h.values.clone();
                        vals.insert(j - 1, p);
                        let g = Injection { m: x + 1, n, values: vals };
                        for (k, t) in hx1.slice(c, n, hom_index(CatKind::Oi, &g)).iter().enumerate() {
                            out[s + k] += t;
                        }
                    }
                }
            }
            hx.space.coords(&out).ok_or_else(|| Error::Construction("precomposition left the hom space".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(hx.dim(), &cols))
}

/// `νV` with the hom spaces it was built from and the precomposition matrices.
#[derive(Clone, Debug)]
pub struct NuData {
    pub module: TruncatedModule,
    pub homs: Vec<HomSpace>,
    /// FI: `t_gens[x][i−1]` is `T_{s_i}` on `Hom(V, P(x))`.
    pub t_gens: Vec<Vec<RationalMatrix>>,
    /// `t_maps[x]`: `[T_ι]` for FI, `[T_{α_{x,1}}, …]` for OI, each `Hom(V,P(x+1)) → Hom(V,P(x))`.
    pub t_maps: Vec<Vec<RationalMatrix>>,
}

pub fn nu_data(v: &TruncatedModule) -> Result<NuData> {
    require_bounds(v)?;
    let top = v.window;
    let homs = (0..=top).map(|x| hom_to_projective(v, x)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = homs.iter().map(HomSpace::dim).collect();
    let t_gens: Vec<Vec<RationalMatrix>> = match v.kind {
        CatKind::Fi => (0..=top)
            .map(|x| (1..x).map(|i| fi_t_transposition(v, &homs[x], i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
        CatKind::Oi => Vec::new(),
    };
    let t_maps: Vec<Vec<RationalMatrix>> = (0..top)
        .map(|x| match v.kind {
            CatKind::Fi => Ok(vec![fi_t_iota(v, &homs[x], &homs[x + 1])?]),
            CatKind::Oi => (1..=x + 1).map(|j| oi_t_coface(v, &homs[x], &homs[x + 1], j)).collect(),
        })
        .collect::<Result<Vec<_>>>()?;
    let fi_gens = t_gens.iter().map(|gs| gs.iter().map(RationalMatrix::transpose).collect()).collect();
    let maps = t_maps.iter().map(|ms| ms.iter().map(RationalMatrix::transpose).collect()).collect();
    let mut module = TruncatedModule::new(v.kind, top, dims, fi_gens, maps, None)?.with_computed_bounds();
    module.support = Support::Fd;
    Ok(NuData { module, homs, t_gens, t_maps })
}

/// `(νV)_x = Hom(V, P(x))^*`.
pub fn nakayama_nu(v: &TruncatedModule) -> Result<TruncatedModule> {
    Ok(nu_data(v)?.module)
}

/// Coordinates of a family `(u_A)`, `A` a subset of `[z]`, `u_A ∈ W_{|A|}`.
#[derive(Clone, Debug)]
struct FamilyLayout {
    z: usize,
    /// `offsets[y]` starts the block of `y`-subsets; blocks have size `dims[y]` each.
    offsets: Vec<usize>,
    dims: Vec<usize>,
    total: usize,
}

impl FamilyLayout {
    fn new(w: &TruncatedModule, top: usize, z: usize) -> Self {
        let ymax = top.min(z);
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        let mut total = 0;
        for y in 0..=ymax {
            offsets.push(total);
            dims.push(w.dims[y]);
            total += crate::combinat::binomial(z, y) as usize * w.dims[y];
        }
        FamilyLayout { z, offsets, dims, total }
    }

    fn ymax(&self) -> usize {
        self.offsets.len() - 1
    }

    fn at(&self, y: usize, idx: usize) -> usize {
        self.offsets[y] + idx * self.dims[y]
    }
}

/// `lhs · u_B = Σ M · u_{B∪p}` as `(lhs, [(index of B∪p, M or the identity)])`.
type Equation<'a> = (RationalMatrix, Vec<(usize, Option<&'a RationalMatrix>)>);

#[derive(Clone, Debug)]
struct InverseData {
    module: TruncatedModule,
    layouts: Vec<FamilyLayout>,
    spaces: Vec<Subspace>,
}

fn support_top(w: &TruncatedModule) -> Result<usize> {
    if w.support != Support::Fd && w.dims.last().copied().unwrap_or(0) != 0 {
        return Err(Error::Invalid("inverse Nakayama needs a finite-dimensional module".into()));
    }
    Ok(w.dims.iter().rposition(|&d| d > 0).unwrap_or(0))
}

fn inverse_data(w: &TruncatedModule, window: usize) -> Result<InverseData> {
    let top = support_top(w)?;
    let kind = w.kind;
    let layouts: Vec<FamilyLayout> = (0..=window).map(|z| FamilyLayout::new(w, top, z)).collect();
    // ρ^W_{y+1}(σ⁻¹) for the permutations σ with σ ∘ ι_y = α_{y,j}.
    let coface_inv: Vec<Vec<RationalMatrix>> = match kind {
        CatKind::Fi => (0..top)
            .map(|y| {
                (1..=y + 1)
                    .map(|j| {
                        let sinv = inverse_perm(&coface_perm(y, j));
                        let d = w.dims[y + 1];
                        let cols: Vec<Vec<Q>> =
                            (0..d).map(|c| apply_perm(&w.fi_gens[y + 1], &sinv, &unit_vec(d, c))).collect();
                        RationalMatrix::from_columns(d, &cols)
                    })
                    .collect()
            })
            .collect(),
        CatKind::Oi => Vec::new(),
    };
    let spaces: Vec<Subspace> = layouts
        .iter()
        .map(|lay| {
            let z = lay.z;
            let mut e = Echelon::new(lay.total);
            // y = z contributes W(ι_z) u_{[z]} = 0: no larger subsets exist.
            for y in (0..=lay.ymax()).filter(|&y| y < top) {
                let d1 = w.dims[y + 1];
                if d1 == 0 {
                    continue;
                }
                let subsets = hom_set(CatKind::Oi, y, z);
                for (bidx, b) in subsets.iter().enumerate() {
                    let equations: Vec<Equation> = match kind {
                        CatKind::Fi => {
                            let mut rhs = Vec::new();
                            for p in (1..=z).filter(|p| !b.values.contains(p)) {
                                let mut vals = b.values.clone();
                                let j = vals.iter().position(|&u| u > p).unwrap_or(vals.len());
                                vals.insert(j, p);
                                let idx = hom_index(CatKind::Oi, &Injection::onto_sorted(z, &vals));
                                rhs.push((idx, Some(&coface_inv[y][j])));
                            }
                            vec![(w.maps[y][0].clone(), rhs)]
                        }
                        CatKind::Oi => (1..=y + 1)
                            .map(|i| {
                                let lo = if i == 1 { 0 } else { b.values[i - 2] };
                                let hi = if i == y + 1 { z + 1 } else { b.values[i - 1] };
                                let rhs = ((lo + 1)..hi)
                                    .map(|p| {
                                        let mut vals = b.values.clone();
                                        vals.insert(i - 1, p);
                                        (hom_index(CatKind::Oi, &Injection::onto_sorted(z, &vals)), None)
                                    })
                                    .collect();
                                (w.maps[y][i - 1].clone(), rhs)
                            })
                            .collect(),
                    };
                    for (lhs, rhs) in equations {
                        for r in 0..d1 {
                            let mut row = BTreeMap::new();
                            for c in 0..w.dims[y] {
                                sparse_push(&mut row, lay.at(y, bidx) + c, lhs.get(r, c).clone());
                            }
                            for (idx, m) in &rhs {
                                let s = lay.at(y + 1, *idx);
                                match m {
                                    Some(m) => {
                                        for c in 0..d1 {
                                            sparse_push(&mut row, s + c, -m.get(r, c).clone());
                                        }
                                    }
                                    None => sparse_push(&mut row, s + r, -Q::one()),
                                }
                            }
                            if !row.is_empty() {
                                e.insert(to_sparse(row));
                            }
                        }
                    }
                }
            }
            Subspace::from_sparse(lay.total, e.null_space())
        })
        .collect();
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();

    // Postcomposition with a morphism [z] → [z'] on a family, as a map of coordinates.
    let push_family = |z: usize, u: &[Q], target: usize, image_of: &dyn Fn(&[usize]) -> Vec<usize>, perm: &dyn Fn(usize, &[usize]) -> Option<usize>| -> Vec<Q> {
        let (src, dst) = (&layouts[z], &layouts[target]);
        let mut out = vec![Q::zero(); dst.total];
        for y in 0..=src.ymax() {
            let d = src.dims[y];
            if d == 0 {
                continue;
            }
            for (aidx, a) in hom_set(CatKind::Oi, y, z).iter().enumerate() {
                let block = &u[src.at(y, aidx)..src.at(y, aidx) + d];
                let mut image = image_of(&a.values);
                image.sort_unstable();
                let bidx = hom_index(CatKind::Oi, &Injection::onto_sorted(target, &image));
                let s = dst.at(y, bidx);
                let moved = match perm(y, &a.values) {
                    Some(k) => w.fi_gens[y][k - 1].mul_vec(block),
                    None => block.to_vec(),
                };
                out[s..s + d].clone_from_slice(&moved);
            }
        }
        out
    };
    let restrict = |m: usize, to: usize, vecs: Vec<Vec<Q>>| -> RationalMatrix {
        let cols: Vec<Vec<Q>> = vecs.iter().map(|u| spaces[to].coords_unchecked(u)).collect();
        RationalMatrix::from_columns(dims[to], &cols).select(&(0..dims[to]).collect::<Vec<_>>(), &(0..m).collect::<Vec<_>>())
    };
    let fi_gens: Vec<Vec<RationalMatrix>> = match kind {
        CatKind::Fi => (0..=window)
            .map(|z| {
                (1..z)
                    .map(|i| {
                        let swap = |vals: &[usize]| -> Vec<usize> {
                            vals.iter().map(|&u| if u == i { i + 1 } else if u == i + 1 { i } else { u }).collect()
                        };
                        let perm = |_y: usize, vals: &[usize]| -> Option<usize> {
                            let k = vals.iter().position(|&u| u == i)?;
                            (vals.get(k + 1) == Some(&(i + 1))).then_some(k + 1)
                        };
                        let vecs = spaces[z].basis_vectors().iter().map(|u| push_family(z, u, z, &swap, &perm)).collect();
                        restrict(dims[z], z, vecs)
                    })
                    .collect()
            })
            .collect(),
        CatKind::Oi => Vec::new(),
    };
    let maps: Vec<Vec<RationalMatrix>> = (0..window)
        .map(|z| {
            let n_maps = match kind {
                CatKind::Fi => 1,
                CatKind::Oi => z + 1,
            };
            (1..=n_maps)
                .map(|i| {
                    // FI uses the standard inclusion, i.e. the coface missing z + 1.
                    let miss = if kind == CatKind::Fi { z + 1 } else { i };
                    let shift = move |vals: &[usize]| -> Vec<usize> { vals.iter().map(|&u| if u < miss { u } else { u + 1 }).collect() };
                    let none = |_y: usize, _vals: &[usize]| -> Option<usize> { None };
                    let vecs = spaces[z].basis_vectors().iter().map(|u| push_family(z, u, z + 1, &shift, &none)).collect();
                    restrict(dims[z], z + 1, vecs)
                })
                .collect()
        })
        .collect();
    let module = TruncatedModule::new(kind, window, dims, fi_gens, maps, None)?.with_computed_bounds();
    Ok(InverseData { module, layouts, spaces })
}

/// `ν⁻¹W` on degrees `0..=window`, each degree solved independently.
pub fn inverse_nakayama(w: &TruncatedModule, window: usize) -> Result<TruncatedModule> {
    Ok(inverse_data(w, window)?.module)
}

#[derive(Clone, Debug)]
pub struct Sheafification {
    pub module: TruncatedModule,
    pub unit: ModuleMorphism,
    pub nu: TruncatedModule,
}

/// `♯V = ν⁻¹νV` with the unit `η : V → ♯V`.
pub fn sheafify(v: &TruncatedModule) -> Result<Sheafification> {
    let nu = nu_data(v)?;
    let inv = inverse_data(&nu.module, v.window)?;
    let top = v.window;
    let comps = (0..=top)
        .map(|z| {
            let lay = &inv.layouts[z];
            let mut ambient = vec![vec![Q::zero(); v.dims[z]]; lay.total];
            for y in 0..=lay.ymax() {
                let h = &nu.homs[y];
                if h.dim() == 0 {
                    continue;
                }
                let basis = h.space.basis_vectors();
                let subsets = hom_set(CatKind::Oi, y, z);
                match v.kind {
                    CatKind::Fi => {
                        // r_{j,A} = c^z_j ∘ ρ(σ_A⁻¹), propagated along s_i A with σ_{s_i A} = s_i σ_A.
                        let mut rows: HashMap<usize, Vec<Vec<Q>>> = HashMap::new();
                        let start: Vec<usize> = (1..=y).collect();
                        let start_idx = hom_index(CatKind::Oi, &Injection::onto_sorted(z, &start));
                        rows.insert(start_idx, basis.iter().map(|c| h.slice(c, z, 0).to_vec()).collect());
                        let mut queue = vec![start];
                        while let Some(a) = queue.pop() {
                            let aidx = hom_index(CatKind::Oi, &Injection::onto_sorted(z, &a));
                            for i in 1..z {
                                if a.contains(&i) == a.contains(&(i + 1)) {
                                    continue;
                                }
                                let mut b: Vec<usize> =
                                    a.iter().map(|&u| if u == i { i + 1 } else if u == i + 1 { i } else { u }).collect();
                                b.sort_unstable();
                                let bidx = hom_index(CatKind::Oi, &Injection::onto_sorted(z, &b));
                                if rows.contains_key(&bidx) {
                                    continue;
                                }
                                let next = rows[&aidx].iter().map(|r| v.fi_gens[z][i - 1].vec_mul(r)).collect();
                                rows.insert(bidx, next);
                                queue.push(b);
                            }
                        }
                        for (aidx, rs) in rows {
                            for (j, r) in rs.into_iter().enumerate() {
                                ambient[lay.at(y, aidx) + j] = r;
                            }
                        }
                    }
                    CatKind::Oi => {
                        for aidx in 0..subsets.len() {
                            for (j, c) in basis.iter().enumerate() {
                                ambient[lay.at(y, aidx) + j] = h.slice(c, z, aidx).to_vec();
                            }
                        }
                    }
                }
            }
            let pivots = inv.spaces[z].pivots();
            let rows: Vec<Vec<Q>> = pivots.iter().map(|&p| ambient[p].clone()).collect();
            RationalMatrix::from_rows(pivots.len(), v.dims[z], rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = ModuleMorphism::new(v.clone(), inv.module.clone(), comps)?;
    Ok(Sheafification { module: inv.module, unit, nu: nu.module })
}

pub fn is_saturated(v: &TruncatedModule) -> Result<bool> {
    Ok(sheafify(v)?.unit.is_iso())
}

/// Saturation through fixed vectors: for every `n < N`, `V_n → V_{N−1}` is
/// injective with image the vectors whose image in `V_N` is fixed by the
/// permutations of `{n+1, …, N}`.
pub fn fi_sheaf_check_invariants(v: &TruncatedModule) -> Result<bool> {
    if v.kind != CatKind::Fi {
        return Err(Error::Invalid("the invariant check applies to FI-modules".into()));
    }
    let g = require_bounds(v)?.gen_degree;
    let top = v.window;
    if top < 2 * g + 1 {
        return Err(Error::Window(format!("invariant check needs window at least {}, got {top}", 2 * g + 1)));
    }
    let iota = &v.maps[top - 1][0];
    for n in 0..top {
        let comp = v.standard_composite(n, top - 1);
        if comp.rank() != v.dims[n] {
            return Ok(false);
        }
        let image = crate::linalgq::image(&comp);
        let mut e = Echelon::new(v.dims[top - 1]);
        let id = RationalMatrix::identity(v.dims[top]);
        for j in (n + 1)..top {
            let m = v.fi_gens[top][j - 1].sub(&id).mul(iota);
            for r in 0..m.rows() {
                e.insert_dense(m.row(r));
            }
        }
        let fixed = Subspace::from_sparse(v.dims[top - 1], e.null_space());
        if fixed != image {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `L_λ` as a saturated module: `ν⁻¹` of `L_λ` placed in degree `|λ|`.
pub fn simple_saturated(lambda: &Partition, window: usize) -> Result<TruncatedModule> {
    let need = lambda.size() + lambda.first();
    if need > window {
        return Err(Error::Window(format!("simple sheaf of {lambda} starts in degree {need}, beyond window {window}")));
    }
    let irrep = irrep_matrices(lambda);
    let w = concentrated_fi(lambda.size(), window, irrep.generators.clone(), irrep.dim())?;
    inverse_nakayama(&w, window)
}

/// `ν⁻¹` of the one-dimensional OI-module in degree `m`.
pub fn simple_saturated_oi(m: usize, window: usize) -> Result<TruncatedModule> {
    if m + 1 > window {
        return Err(Error::Window(format!("simple OI sheaf {m} needs window at least {}", m + 1)));
    }
    inverse_nakayama(&simple_at_oi(m, window)?, window)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafFactor {
    /// FI factors are named by a partition, OI factors by their degree.
    pub lambda: Option<String>,
    pub degree: usize,
    pub mult: usize,
}

/// Composition factors of `νV`, read degreewise.
pub fn composition_factors_sheaf(v: &TruncatedModule) -> Result<Vec<SheafFactor>> {
    let nu = nakayama_nu(v)?;
    factors_of_fd(&nu)
}

fn factors_of_fd(nu: &TruncatedModule) -> Result<Vec<SheafFactor>> {
    let mut out = Vec::new();
    for x in 0..=nu.window {
        if nu.dims[x] == 0 {
            continue;
        }
        match nu.kind {
            CatKind::Fi => {
                for (lambda, mult) in decompose_degree(nu, x)? {
                    out.push(SheafFactor { lambda: Some(lambda.paren()), degree: x, mult });
                }
            }
            CatKind::Oi => out.push(SheafFactor { lambda: None, degree: x, mult: nu.dims[x] }),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafReport {
    pub unit_iso: bool,
    pub defect_dims: Vec<usize>,
    pub factors: Vec<SheafFactor>,
}

pub fn sheaf_report(v: &TruncatedModule) -> Result<(Sheafification, SheafReport)> {
    let sh = sheafify(v)?;
    let defect = sh.unit.cokernel()?.0;
    let report = SheafReport { unit_iso: sh.unit.is_iso(), defect_dims: defect.dims.clone(), factors: factors_of_fd(&sh.nu)? };
    Ok((sh, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationBounds {
    pub gen_degree: usize,
    pub rel_degree: usize,
    pub presentation_degree: usize,
}

pub fn presentation_degree(v: &TruncatedModule) -> Result<PresentationBounds> {
    let b = v
        .degree_defects()
        .bounds()
        .ok_or_else(|| Error::Window(format!("window {} exhausted before the presentation stabilized", v.window)))?;
    Ok(PresentationBounds { gen_degree: b.gen_degree, rel_degree: b.rel_degree, presentation_degree: b.presentation_degree() })
}

pub fn generation_degree(v: &TruncatedModule) -> Result<usize> {
    Ok(presentation_degree(v)?.gen_degree)
}

/// Outcome of comparing `W` with `ν(ν⁻¹W)` through the explicit map
/// `W_x^* → Hom(ν⁻¹W, P(x))`, `w* ↦ (ψ ↦ w*(u_{[x]}(ψ)))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounitCheck {
    pub lands_in_hom: bool,
    pub bijective: bool,
    pub natural: bool,
}

impl CounitCheck {
    pub fn is_iso(&self) -> bool {
        self.lands_in_hom && self.bijective && self.natural
    }
}

pub fn nu_inverse_counit(w: &TruncatedModule, window: usize) -> Result<CounitCheck> {
    let inv = inverse_data(w, window)?;
    let v = &inv.module;
    let nu = nu_data(v)?;
    let top = support_top(w)?;
    let mut lands = true;
    // e[x] is Hom(V, P(x)) × W_x^* in hom-space coordinates.
    let mut e: Vec<RationalMatrix> = Vec::new();
    for x in 0..=window {
        let h = &nu.homs[x];
        let dw = if x <= top { w.dims[x] } else { 0 };
        let mut cols = Vec::new();
        for k in 0..dw {
            let mut c = vec![Q::zero(); h.unknowns()];
            for z in x..=window {
                let lay = &inv.layouts[z];
                let maps = match w.kind {
                    CatKind::Fi => 1,
                    CatKind::Oi => crate::combinat::binomial(z, x) as usize,
                };
                for idx in 0..maps {
                    let s = h.start(z, idx);
                    for (b, basis) in inv.spaces[z].basis_vectors().iter().enumerate() {
                        c[s + b] = basis[lay.at(x, idx) + k].clone();
                    }
                }
            }
            match h.space.coords(&c) {
                Some(col) => cols.push(col),
                None => {
                    lands = false;
                    cols.push(vec![Q::zero(); h.dim()]);
                }
            }
        }
        e.push(RationalMatrix::from_columns(h.dim(), &cols));
    }
    let bijective = e.iter().all(|m| m.is_square() && m.is_invertible());
    let mut natural = true;
    for x in 0..window {
        for (i, t) in nu.t_maps[x].iter().enumerate() {
            let wm = if x < top { w.maps[x][i].transpose() } else { RationalMatrix::zeros(0, w.dims.get(x + 1).copied().unwrap_or(0)) };
            let wm = if x < top { wm } else { RationalMatrix::zeros(e[x].cols(), e[x + 1].cols()) };
            if t.mul(&e[x + 1]) != e[x].mul(&wm) {
                natural = false;
            }
        }
    }
    if w.kind == CatKind::Fi {
        for (x, ex) in e.iter().enumerate().take(top.min(window) + 1) {
            for (i, t) in nu.t_gens[x].iter().enumerate() {
                if t.mul(ex) != ex.mul(&w.fi_gens[x][i].transpose()) {
                    natural = false;
                }
            }
        }
    }
    Ok(CounitCheck { lands_in_hom: lands, bijective, natural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::pad_uniform;
    use crate::modcore::{direct_sum, induced_projective, simple_at, submodule};
    use crate::torsion::torsion_spaces;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ones_above_zero(window: usize) -> TruncatedModule {
        let p0 = free_module(CatKind::Fi, 0, window).unwrap();
        let spaces = (0..=window).map(|n| if n == 0 { Subspace::zero(1) } else { Subspace::full(1) }).collect();
        submodule(&p0, spaces).unwrap().0
    }

    #[test]
    fn hom_dimensions_match_direct_solves() {
        let pl = induced_projective(&p("1"), 4).unwrap();
        assert_eq!(hom_to_projective(&pl, 1).unwrap().dim(), 1);
        let p0 = free_module(CatKind::Fi, 0, 4).unwrap();
        assert_eq!(hom_to_projective(&p0, 0).unwrap().dim(), 1);
        let s = simple_at(&p("1"), 4).unwrap();
        for x in 0..=4 {
            assert_eq!(hom_to_projective(&s, x).unwrap().dim(), 0);
        }
        // Hom(P(a), P(b)) ≅ P(b)_a, against the generic solver.
        for kind in [CatKind::Fi, CatKind::Oi] {
            for a in 0..=2 {
                let pa = free_module(kind, a, 4).unwrap();
                for b in 0..=2 {
                    let h = hom_to_projective(&pa, b).unwrap();
                    let generic = crate::modcore::hom_space(&pa, &free_module(kind, b, 4).unwrap()).unwrap();
                    assert_eq!(h.dim(), generic.len(), "{kind} {a} {b}");
                    for c in h.space.basis_vectors() {
                        h.to_morphism(&pa, &c).unwrap().validate().unwrap();
                    }
                }
            }
        }
        let p21 = induced_projective(&p("2,1"), 5).unwrap();
        let h = hom_to_projective(&p21, 2).unwrap();
        let generic = crate::modcore::hom_space(&p21, &free_module(CatKind::Fi, 2, 5).unwrap()).unwrap();
        assert_eq!(h.dim(), generic.len());
    }

    #[test]
    fn nu_of_small_modules() {
        assert_eq!(nakayama_nu(&free_module(CatKind::Fi, 0, 4).unwrap()).unwrap().dims, vec![1, 0, 0, 0, 0]);
        assert_eq!(nakayama_nu(&induced_projective(&p("1"), 4).unwrap()).unwrap().dims, vec![1, 1, 0, 0, 0]);
        assert!(nakayama_nu(&simple_at(&p("2"), 4).unwrap()).unwrap().is_zero());
        let nu = nakayama_nu(&free_module(CatKind::Fi, 2, 5).unwrap()).unwrap();
        assert!(nu.validate().passed);
        assert_eq!(nu.dims, vec![1, 2, 2, 0, 0, 0]);
        let nu = nakayama_nu(&free_module(CatKind::Oi, 2, 5).unwrap()).unwrap();
        assert!(nu.validate().passed);
        assert_eq!(nu.dims, vec![1, 2, 1, 0, 0, 0]);
    }

    #[test]
    fn inverse_nakayama_examples() {
        let zero = TruncatedModule::zero(CatKind::Fi, 4);
        assert!(inverse_nakayama(&zero, 4).unwrap().is_zero());
        let triv = concentrated_fi(0, 4, vec![], 1).unwrap();
        let inv = inverse_nakayama(&triv, 5).unwrap();
        assert_eq!(inv.dims, vec![1; 6]);
        assert!(inv.validate().passed);
        let l1 = simple_saturated(&p("1"), 6).unwrap();
        assert_eq!(l1.dims, vec![0, 0, 1, 2, 3, 4, 5]);
        assert!(l1.validate().passed);
        for n in 2..=6 {
            let dec = decompose_degree(&l1, n).unwrap();
            assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![(pad_uniform(&p("1"), n).unwrap(), 1)]);
        }
    }

    #[test]
    fn simple_saturated_two() {
        let l2 = simple_saturated(&p("2"), 6).unwrap();
        assert!(l2.validate().passed);
        for n in 0..=6 {
            let dec = decompose_degree(&l2, n).unwrap();
            match pad_uniform(&p("2"), n) {
                Some(mu) => assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![(mu, 1)]),
                None => assert!(dec.is_empty()),
            }
        }
    }

    #[test]
    fn sheafify_examples() {
        let p1 = induced_projective(&p("1"), 4).unwrap();
        let sh = sheafify(&p1).unwrap();
        sh.unit.validate().unwrap();
        assert!(sh.unit.is_iso());
        assert!(sheafify(&simple_at(&p("1"), 4).unwrap()).unwrap().module.is_zero());
        let v = ones_above_zero(4);
        let sh = sheafify(&v).unwrap();
        sh.unit.validate().unwrap();
        assert_eq!(sh.module.dims, vec![1; 5]);
        assert!(sh.unit.is_injective());
        assert_eq!(sh.unit.cokernel().unwrap().0.dims, vec![1, 0, 0, 0, 0]);
        assert!(!is_saturated(&v).unwrap());
        assert!(!fi_sheaf_check_invariants(&v).unwrap());
    }

    #[test]
    fn unit_kernel_is_torsion() {
        let v = direct_sum(&[&induced_projective(&p("1"), 5).unwrap(), &simple_at(&p("1,1"), 5).unwrap()]).unwrap();
        let sh = sheafify(&v).unwrap();
        sh.unit.validate().unwrap();
        let (k, _) = sh.unit.kernel().unwrap();
        let t: Vec<usize> = torsion_spaces(&v).iter().map(Subspace::dim).collect();
        assert_eq!(k.dims, t);
    }

    #[test]
    fn saturation_of_simple_sheaves_and_invariant_check() {
        let l1 = simple_saturated(&p("1"), 5).unwrap();
        assert!(is_saturated(&l1).unwrap());
        assert!(fi_sheaf_check_invariants(&l1).unwrap());
        let p1 = free_module(CatKind::Fi, 1, 4).unwrap();
        assert!(fi_sheaf_check_invariants(&p1).unwrap());
        assert!(is_saturated(&p1).unwrap());
    }

    #[test]
    fn presentation_degrees() {
        let pb = presentation_degree(&free_module(CatKind::Fi, 2, 5).unwrap()).unwrap();
        assert_eq!((pb.gen_degree, pb.presentation_degree), (2, 2));
        let l1 = simple_saturated(&p("1"), 6).unwrap();
        let pb = presentation_degree(&l1).unwrap();
        assert_eq!((pb.gen_degree, pb.presentation_degree), (2, 3));
        assert_eq!(generation_degree(&TruncatedModule::zero(CatKind::Fi, 3)).unwrap(), 0);
    }

    #[test]
    fn composition_factors() {
        let f = composition_factors_sheaf(&free_module(CatKind::Fi, 0, 4).unwrap()).unwrap();
        assert_eq!(f, vec![SheafFactor { lambda: Some("()".into()), degree: 0, mult: 1 }]);
        let f = composition_factors_sheaf(&induced_projective(&p("1"), 4).unwrap()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(composition_factors_sheaf(&simple_at(&p("2"), 4).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn counit_is_an_isomorphism_on_small_modules() {
        let w = simple_at(&p("1"), 4).unwrap();
        assert!(nu_inverse_counit(&w, 5).unwrap().is_iso());
        let w = simple_at_oi(1, 5).unwrap();
        assert!(nu_inverse_counit(&w, 5).unwrap().is_iso());
        let nu = nakayama_nu(&free_module(CatKind::Fi, 1, 4).unwrap()).unwrap();
        assert!(nu_inverse_counit(&nu, 5).unwrap().is_iso());
    }

    #[test]
    fn oi_simples() {
        let k1 = simple_saturated_oi(1, 5).unwrap();
        assert!(k1.validate().passed);
        assert_eq!(k1.dims, vec![0, 0, 1, 2, 3, 4]);
        let k2 = simple_saturated_oi(2, 6).unwrap();
        assert!(k2.validate().passed);
        assert_eq!(k2.dims, vec![0, 0, 0, 0, 1, 3, 6]);
    }
}
