//! Discrete representations of `Aut(ℕ)` on finite horizons.
//!
//! `F(n)` is the free module on injections `[n] → ℕ` with `g · f = g ∘ f`.
//! A submodule is described by one generator `x`; its horizon-`M` slice is the
//! span of `h ∘ x` over injections `h` defined on the support of `x` with
//! values in `[M]`. Invariants under `U_i = Stab([i])` are decided inside that
//! slice by the finite group permuting `[M+1] ∖ [i]`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::linalgq::{q, q_from_str, q_to_string, Echelon, RationalMatrix, Subspace, Q};
use crate::modcore::{Support, TruncatedModule};
use crate::skelcat::{hom_index, hom_set, CatKind, Injection};
use crate::symrep::{all_perms, cycle_type_of, mn_character, young_symmetrizer, GroupAlgebraElement};

/// A finite linear combination of injections `[n] → [M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupportVector {
    pub n: usize,
    pub horizon: usize,
    pub terms: BTreeMap<Vec<usize>, Q>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    values: Vec<usize>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    n: usize,
    #[serde(rename = "M")]
    horizon: usize,
    terms: Vec<RawTerm>,
}

impl FiniteSupportVector {
    pub fn zero(n: usize, horizon: usize) -> Self {
        FiniteSupportVector { n, horizon, terms: BTreeMap::new() }
    }

    pub fn basis(values: Vec<usize>, horizon: usize) -> Result<Self> {
        let f = Injection::new(values.len(), horizon, values)?;
        let mut v = Self::zero(f.m, horizon);
        v.terms.insert(f.values, Q::one());
        Ok(v)
    }

    pub fn add_term(&mut self, values: Vec<usize>, c: Q) {
        let e = self.terms.entry(values).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest value hit by any term.
    pub fn support_max(&self) -> usize {
        self.terms.keys().flat_map(|f| f.iter().copied()).max().unwrap_or(0)
    }

    /// `h ∘ self` for `h` given by its values on `[support_max]`.
    pub fn compose_left(&self, h: &[usize], horizon: usize) -> Self {
        let mut out = Self::zero(self.n, horizon);
        for (f, c) in &self.terms {
            out.add_term(f.iter().map(|&k| h[k - 1]).collect(), c.clone());
        }
        out
    }

    /// `self · e` for `e` in the group algebra of `S_n`: `f · σ = f ∘ σ`.
    pub fn mul_right(&self, e: &GroupAlgebraElement) -> Self {
        let mut out = Self::zero(self.n, self.horizon);
        for (f, c) in &self.terms {
            for (sigma, a) in &e.terms {
                out.add_term(sigma.iter().map(|&k| f[k]).collect(), c * a);
            }
        }
        out
    }

    /// Dense coordinates on `Inj([n], [horizon])` in lexicographic order.
    pub fn to_dense(&self, horizon: usize) -> Result<Vec<Q>> {
        let width = hom_set(CatKind::Fi, self.n, horizon).len();
        let mut v = vec![Q::zero(); width];
        for (f, c) in &self.terms {
            let inj = Injection::new(self.n, horizon, f.clone())?;
            v[hom_index(CatKind::Fi, &inj)] += c;
        }
        Ok(v)
    }

    pub fn from_dense(n: usize, horizon: usize, v: &[Q]) -> Self {
        let mut out = Self::zero(n, horizon);
        for (f, c) in hom_set(CatKind::Fi, n, horizon).into_iter().zip(v) {
            if !c.is_zero() {
                out.terms.insert(f.values, c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let raw = RawVector {
            n: self.n,
            horizon: self.horizon,
            terms: self.terms.iter().map(|(f, c)| RawTerm { values: f.clone(), coef: q_to_string(c) }).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawVector = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut v = Self::zero(raw.n, raw.horizon);
        for t in raw.terms {
            let f = Injection::new(raw.n, raw.horizon, t.values)?;
            v.add_term(f.values, q_from_str(&t.coef)?);
        }
        Ok(v)
    }
}

/// `U_i = Stab_G([i])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpenStabilizer {
    pub i: usize,
}

/// The submodule of `F(n)` generated by one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedModule {
    pub label: String,
    pub generator: FiniteSupportVector,
}

impl GeneratedModule {
    pub fn n(&self) -> usize {
        self.generator.n
    }

    /// The horizon-`M` slice, in coordinates on `Inj([n], [M])`.
    pub fn slice(&self, horizon: usize) -> Result<Subspace> {
        let m0 = self.generator.support_max();
        let width = hom_set(CatKind::Fi, self.n(), horizon).len();
        if horizon < m0 {
            return Ok(Subspace::zero(width));
        }
        let vecs = hom_set(CatKind::Fi, m0, horizon)
            .iter()
            .map(|h| self.generator.compose_left(&h.values, horizon).to_dense(horizon))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_vectors(width, &vecs))
    }
}

/// `F(n)`, generated by the identity of `[n]`.
pub fn build_f(n: usize) -> GeneratedModule {
    let generator = FiniteSupportVector::basis((1..=n).collect(), n).expect("identity injection");
    GeneratedModule { label: format!("F({n})"), generator }
}

/// `F(λ) = F(|λ|) e_λ`, generated by the identity of `[|λ|]` times the Young symmetrizer.
pub fn build_f_lambda(lambda: &Partition, horizon: usize) -> Result<GeneratedModule> {
    let n = lambda.size();
    if n > horizon {
        return Err(Error::Window(format!("F({lambda}) needs horizon at least {n}")));
    }
    let generator = build_f(n).generator.mul_right(&young_symmetrizer(lambda));
    Ok(GeneratedModule { label: format!("F{}", lambda.paren()), generator: FiniteSupportVector { horizon, ..generator } })
}

/// `λ̃ = (λ₁, λ₁, λ₂, …)`.
pub fn tilde(lambda: &Partition) -> Partition {
    let mut parts = vec![lambda.first()];
    parts.extend_from_slice(lambda.parts());
    Partition::new(parts.into_iter().filter(|&p| p > 0).collect()).expect("weakly decreasing")
}

/// `Σ_g χ_μ(g) g · v` over `S_m`, proportional to the `μ`-isotypic projection.
fn isotypic_part(mu: &Partition, m: usize, v: &FiniteSupportVector) -> Result<FiniteSupportVector> {
    let mut chars: HashMap<Partition, i64> = HashMap::new();
    let mut out = FiniteSupportVector::zero(v.n, v.horizon);
    for g in all_perms(m) {
        let ct = cycle_type_of(&g);
        let chi = match chars.get(&ct) {
            Some(&c) => c,
            None => {
                let c = mn_character(mu, &ct)?;
                chars.insert(ct, c);
                c
            }
        };
        if chi == 0 {
            continue;
        }
        let h: Vec<usize> = g.iter().map(|&k| k + 1).collect();
        for (f, c) in v.compose_left(&h, v.horizon).terms {
            out.add_term(f, c * q(chi));
        }
    }
    Ok(out)
}

/// Candidate vectors `ε_λ̃`: the `λ̃`-isotypic parts of `f · e_λ`, one per seed injection
/// `f : [|λ|] → [|λ| + λ₁]`, in lexicographic order of the seeds, zeros dropped.
pub fn epsilon_candidates(lambda: &Partition) -> Result<Vec<FiniteSupportVector>> {
    let n = lambda.size();
    let m = n + lambda.first();
    let e = young_symmetrizer(lambda);
    let mu = tilde(lambda);
    let mut out = Vec::new();
    for f in hom_set(CatKind::Fi, n, m) {
        let seed = FiniteSupportVector::basis(f.values, m)?.mul_right(&e);
        let eps = isotypic_part(&mu, m, &seed)?;
        if !eps.is_zero() {
            out.push(eps);
        }
    }
    Ok(out)
}

/// `S(λ) = F(|λ| + λ₁) ε_λ̃`, generated by the first nonzero candidate `ε`.
pub fn build_s_lambda(lambda: &Partition, horizon: usize) -> Result<GeneratedModule> {
    let m = lambda.size() + lambda.first();
    if m > horizon {
        return Err(Error::Window(format!("S({lambda}) needs horizon at least {m}")));
    }
    let eps = epsilon_candidates(lambda)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Construction(format!("isotypic projection of {} vanishes on every seed", tilde(lambda))))?;
    Ok(GeneratedModule { label: format!("S{}", lambda.paren()), generator: FiniteSupportVector { horizon, ..eps } })
}

/// `S(λ)` from each nonzero seed; all must span the same slice at `horizon`.
pub fn s_lambda_seed_agreement(lambda: &Partition, horizon: usize) -> Result<bool> {
    let cands = epsilon_candidates(lambda)?;
    let slices = cands
        .into_iter()
        .take(2)
        .map(|eps| GeneratedModule { label: String::new(), generator: eps }.slice(horizon))
        .collect::<Result<Vec<_>>>()?;
    Ok(slices.windows(2).all(|w| w[0] == w[1]))
}

fn transposition_values(horizon: usize, j: usize) -> Vec<usize> {
    (1..=horizon).map(|k| if k == j { j + 1 } else if k == j + 1 { j } else { k }).collect()
}

/// `X^{U_i}` inside the horizon-`M` slice, tested against `Sym([M+1] ∖ [i])`.
pub fn invariants(x: &GeneratedModule, i: usize, horizon: usize) -> Result<Subspace> {
    let n = x.n();
    if horizon < i.max(n) + 1 {
        return Err(Error::Window(format!("horizon {horizon} below {} for U_{i} on F({n})", i.max(n) + 1)));
    }
    let slice = x.slice(horizon)?;
    let basis: Vec<FiniteSupportVector> =
        slice.basis_vectors().iter().map(|b| FiniteSupportVector::from_dense(n, horizon, b)).collect();
    let wide = horizon + 1;
    // Rows of the system Σ_k t_k (τ b_k − b_k) = 0, one per (τ, coordinate).
    let mut e = Echelon::new(basis.len());
    for j in (i + 1)..=horizon {
        let tau = transposition_values(wide, j);
        let mut by_coord: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            let mut d = b.compose_left(&tau, wide);
            for (f, c) in &b.terms {
                d.add_term(f.clone(), -c.clone());
            }
            for (f, c) in d.terms {
                let idx = hom_index(CatKind::Fi, &Injection { m: n, n: wide, values: f });
                by_coord.entry(idx).or_default().push((k, c));
            }
        }
        for (_, mut row) in by_coord {
            row.sort_by_key(|(k, _)| *k);
            e.insert(row);
        }
    }
    let vecs: Vec<Vec<Q>> = e
        .null_space()
        .iter()
        .map(|t| {
            let mut v = vec![Q::zero(); slice.ambient()];
            for (k, c) in t {
                for (slot, b) in v.iter_mut().zip(slice.basis().row(*k)) {
                    *slot += c * b;
                }
            }
            v
        })
        .collect();
    Ok(Subspace::from_vectors(slice.ambient(), &vecs))
}

/// `(F(n))^{U_i}` at horizon `M`.
pub fn invariants_f(n: usize, i: usize, horizon: usize) -> Result<Subspace> {
    invariants(&build_f(n), i, horizon)
}

/// `φ(X)` on degrees `0..=window`: degree `i` is `X^{U_i}`, with `S_i` acting by
/// postcomposition and `ι_i` the inclusion `X^{U_i} ⊆ X^{U_{i+1}}`.
pub fn phi_module(x: &GeneratedModule, window: usize, horizon: usize) -> Result<TruncatedModule> {
    let n = x.n();
    if horizon < window.max(x.generator.support_max()) + 1 {
        return Err(Error::Window(format!("horizon {horizon} too small for window {window}")));
    }
    let spaces = (0..=window).map(|i| invariants(x, i, horizon)).collect::<Result<Vec<_>>>()?;
    // The top degree must already be stable one step further out.
    let further = invariants(x, window, horizon + 1)?;
    if further.dim() != spaces[window].dim() {
        return Err(Error::Window(format!("invariants not yet stable at horizon {horizon}")));
    }
    let coords = |s: &Subspace, v: &[Q]| {
        s.coords(v).ok_or_else(|| Error::Construction("invariant vector left the fixed space".into()))
    };
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let mut fi_gens = Vec::with_capacity(window + 1);
    for (i, s) in spaces.iter().enumerate() {
        let mut gens = Vec::new();
        for j in 1..i {
            let tau = transposition_values(horizon, j);
            let cols = s
                .basis_vectors()
                .iter()
                .map(|b| coords(s, &FiniteSupportVector::from_dense(n, horizon, b).compose_left(&tau, horizon).to_dense(horizon)?))
                .collect::<Result<Vec<_>>>()?;
            gens.push(RationalMatrix::from_columns(dims[i], &cols));
        }
        fi_gens.push(gens);
    }
    let maps = (0..window)
        .map(|i| {
            let cols =
                spaces[i].basis_vectors().iter().map(|b| coords(&spaces[i + 1], b)).collect::<Result<Vec<_>>>()?;
            Ok(vec![RationalMatrix::from_columns(dims[i + 1], &cols)])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = TruncatedModule::new(CatKind::Fi, window, dims, fi_gens, maps, None)?.with_computed_bounds();
    m.support = Support::Open;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::falling_factorial;
    use crate::modcore::{decompose_degree, find_isomorphism, free_module, induced_projective};
    use crate::nakayama::{presentation_degree, simple_saturated};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(invariants_f(1, 2, 4).unwrap().dim(), 2);
        assert_eq!(invariants_f(2, 1, 4).unwrap().dim(), 0);
        for i in 0..=3 {
            assert_eq!(invariants_f(0, i, 4).unwrap().dim(), 1);
        }
        for n in 0..=2 {
            for i in 0..=4 {
                let expect = if n <= i { falling_factorial(i, n) as usize } else { 0 };
                for m in (i.max(n) + 1)..=6 {
                    assert_eq!(invariants_f(n, i, m).unwrap().dim(), expect, "n={n} i={i} M={m}");
                }
            }
        }
        assert!(invariants_f(1, 3, 3).is_err());
    }

    #[test]
    fn phi_of_free_modules() {
        for n in 0..=2 {
            let phi = phi_module(&build_f(n), 4, 6).unwrap();
            assert!(phi.validate().passed);
            let p = free_module(CatKind::Fi, n, 4).unwrap();
            assert!(find_isomorphism(&phi, &p).unwrap().is_some(), "n={n}");
        }
    }

    #[test]
    fn phi_of_f_lambda() {
        let f1 = build_f_lambda(&p("1"), 6).unwrap();
        assert_eq!(f1.slice(5).unwrap(), build_f(1).slice(5).unwrap());
        let f11 = build_f_lambda(&p("1,1"), 6).unwrap();
        let phi = phi_module(&f11, 4, 6).unwrap();
        assert_eq!(phi.dims, induced_projective(&p("1,1"), 4).unwrap().dims);
        assert!(find_isomorphism(&phi, &induced_projective(&p("1,1"), 4).unwrap()).unwrap().is_some());
    }

    #[test]
    fn s_lambda_matches_simple_sheaves() {
        let s0 = build_s_lambda(&Partition::empty(), 4).unwrap();
        assert_eq!(phi_module(&s0, 3, 5).unwrap().dims, vec![1, 1, 1, 1]);
        let s1 = build_s_lambda(&p("1"), 7).unwrap();
        let phi = phi_module(&s1, 5, 7).unwrap();
        assert_eq!(phi.dims, vec![0, 0, 1, 2, 3, 4]);
        let l1 = simple_saturated(&p("1"), 5).unwrap();
        for d in 0..=5 {
            assert_eq!(decompose_degree(&phi, d).unwrap(), decompose_degree(&l1, d).unwrap());
        }
        let pb = presentation_degree(&phi).unwrap();
        assert_eq!((pb.gen_degree, pb.presentation_degree), (2, 3));
        // The generator is a difference of two point evaluations.
        assert_eq!(s1.generator.terms.len(), 2);
        assert_eq!(s1.generator.terms.values().cloned().sum::<Q>(), Q::zero());
    }

    #[test]
    fn s_two_and_containment() {
        let s2 = build_s_lambda(&p("2"), 8).unwrap();
        let phi = phi_module(&s2, 5, 7).unwrap();
        let l2 = simple_saturated(&p("2"), 5).unwrap();
        assert_eq!(phi.dims, l2.dims);
        for d in 0..=5 {
            assert_eq!(decompose_degree(&phi, d).unwrap(), decompose_degree(&l2, d).unwrap());
        }
        for lambda in [p("1"), p("2"), p("1,1")] {
            let s = build_s_lambda(&lambda, 6).unwrap();
            let f = build_f_lambda(&lambda, 6).unwrap();
            for m in 0..=5 {
                assert!(f.slice(m).unwrap().contains_subspace(&s.slice(m).unwrap()), "{lambda} M={m}");
            }
            assert!(s_lambda_seed_agreement(&lambda, 5).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let s1 = build_s_lambda(&p("1"), 4).unwrap();
        let text = s1.generator.to_json();
        let back = FiniteSupportVector::from_json(&text).unwrap();
        assert_eq!(back, s1.generator);
        assert_eq!(back.to_json(), text);
    }
}
