//! Torsion on a finite window: the torsion submodule, separatedness, the
//! 𝔪-adic description of local cohomology in degree zero, and the
//! saturation defect.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalgq::{kernel, Echelon, RationalMatrix, Subspace, Q};
use crate::modcore::{quotient, submodule, ModuleMorphism, TruncatedModule};
use crate::skelcat::{hom_set, CatKind};

#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub torsion_part: TruncatedModule,
    pub free_part: TruncatedModule,
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
    /// Degrees `≤ reliable_up_to` agree with the untruncated torsion.
    pub reliable_up_to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub torsion_dims: Vec<usize>,
    pub reliable_up_to: usize,
}

/// Degrees up to `N − (gen_degree + 1)` are unaffected by the window edge.
pub fn reliable_range(v: &TruncatedModule) -> usize {
    let g = match v.bounds {
        Some(b) => b.gen_degree,
        None => v.degree_defects().gen_degree(),
    };
    v.window.saturating_sub(g + 1)
}

/// Vectors of each degree killed by some morphism into the top degree.
///
/// FI: the kernel of `ι_{N−1} ⋯ ι_n`. OI: the sum of the kernels of all
/// `V(f)`, `f : [n] → [N]`, closed under the cofaces so that it is a submodule.
pub fn torsion_spaces(v: &TruncatedModule) -> Vec<Subspace> {
    let top = v.window;
    match v.kind {
        CatKind::Fi => (0..=top).map(|n| kernel(&v.standard_composite(n, top))).collect(),
        CatKind::Oi => {
            let mut spaces: Vec<Subspace> = (0..=top)
                .map(|n| {
                    let mut vecs = Vec::new();
                    for f in hom_set(CatKind::Oi, n, top) {
                        let m = oi_matrix(v, &f.values, n);
                        vecs.extend(kernel(&m).basis_vectors());
                    }
                    Subspace::from_vectors(v.dims[n], &vecs)
                })
                .collect();
            for n in 0..top {
                let pushed: Vec<Vec<Q>> = v.maps[n]
                    .iter()
                    .flat_map(|a| spaces[n].basis_vectors().into_iter().map(move |b| a.mul_vec(&b)))
                    .collect();
                let mut all = spaces[n + 1].basis_vectors();
                all.extend(pushed);
                spaces[n + 1] = Subspace::from_vectors(v.dims[n + 1], &all);
            }
            spaces
        }
    }
}

/// Matrix of `V(f)` for an order-preserving `f : [n] → [N]` given by its values.
fn oi_matrix(v: &TruncatedModule, values: &[usize], n: usize) -> RationalMatrix {
    let f = crate::skelcat::Injection { m: n, n: v.window, values: values.to_vec() };
    let cols: Vec<Vec<Q>> = (0..v.dims[n])
        .map(|c| {
            let mut e = vec![Q::zero(); v.dims[n]];
            e[c] = num_traits::One::one();
            v.act(&f, &e).expect("inside window")
        })
        .collect();
    RationalMatrix::from_columns(v.dims[v.window], &cols)
}

pub fn torsion_submodule(v: &TruncatedModule) -> Result<TorsionDecomposition> {
    let report = v.validate();
    if !report.passed {
        return Err(Error::Invalid(format!("module fails validation: {}", report.violation.unwrap_or_default())));
    }
    let spaces = torsion_spaces(v);
    let (torsion_part, inclusion) = submodule(v, spaces.clone())?;
    let (free_part, projection) = quotient(v, spaces)?;
    Ok(TorsionDecomposition { torsion_part, free_part, inclusion, projection, reliable_up_to: reliable_range(v) })
}

pub fn torsion_report(v: &TruncatedModule) -> TorsionReport {
    TorsionReport { torsion_dims: torsion_spaces(v).iter().map(Subspace::dim).collect(), reliable_up_to: reliable_range(v) }
}

/// Every structure map injective on the window.
pub fn is_separated(v: &TruncatedModule) -> bool {
    v.maps.iter().flatten().all(|m| m.rank() == m.cols())
}

/// Vectors annihilated by a power of the ideal of non-invertible morphisms.
///
/// Computed top-down: `A_N = 0` and `A_n` is the common preimage of `A_{n+1}`
/// under every coface, so `A_n` is the joint kernel of all morphisms into `[N]`.
pub fn h0_local_spaces(v: &TruncatedModule) -> Vec<Subspace> {
    let top = v.window;
    let mut spaces = vec![Subspace::zero(0); top + 1];
    spaces[top] = Subspace::zero(v.dims[top]);
    for n in (0..top).rev() {
        // Functionals vanishing on A_{n+1}.
        let annihilator = {
            let mut e = Echelon::new(v.dims[n + 1]);
            for b in spaces[n + 1].basis_vectors() {
                e.insert_dense(&b);
            }
            e.null_space()
        };
        let mut rows = Echelon::new(v.dims[n]);
        for i in 1..=n + 1 {
            let a = v.coface_matrix(n, i);
            for f in &annihilator {
                let mut row = vec![Q::zero(); v.dims[n]];
                for (k, x) in f {
                    for (c, slot) in row.iter_mut().enumerate() {
                        let y = a.get(*k, c);
                        if !y.is_zero() {
                            *slot += x * y;
                        }
                    }
                }
                rows.insert_dense(&row);
            }
        }
        spaces[n] = Subspace::from_sparse(v.dims[n], rows.null_space());
    }
    spaces
}

pub fn h0_local(v: &TruncatedModule) -> Result<TruncatedModule> {
    Ok(submodule(v, h0_local_spaces(v))?.0)
}

/// The cokernel of the sheafification unit of a separated module.
pub fn saturation_defect(v: &TruncatedModule) -> Result<TruncatedModule> {
    if !is_separated(v) {
        return Err(Error::Invalid("saturation defect needs a separated module".into()));
    }
    let sh = crate::nakayama::sheafify(v)?;
    Ok(sh.unit.cokernel()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Partition;
    use crate::linalgq::q;
    use crate::modcore::{direct_sum, free_module, induced_projective, simple_at, simple_at_oi};

    fn dims(spaces: &[Subspace]) -> Vec<usize> {
        spaces.iter().map(Subspace::dim).collect()
    }

    #[test]
    fn torsion_of_basic_modules() {
        let s = simple_at(&"2".parse().unwrap(), 5).unwrap();
        assert_eq!(dims(&torsion_spaces(&s)), s.dims);
        for m in 0..=2 {
            let p = free_module(CatKind::Fi, m, 5).unwrap();
            assert!(torsion_spaces(&p).iter().all(|t| t.dim() == 0));
            let p = free_module(CatKind::Oi, m, 5).unwrap();
            assert!(torsion_spaces(&p).iter().all(|t| t.dim() == 0));
        }
        let p0 = free_module(CatKind::Fi, 0, 4).unwrap();
        let s0 = simple_at(&Partition::empty(), 4).unwrap();
        let sum = direct_sum(&[&p0, &s0]).unwrap();
        let t = torsion_submodule(&sum).unwrap();
        assert_eq!(t.torsion_part.dims, s0.dims);
        assert!(is_separated(&t.free_part));
        assert_eq!(t.free_part.dims, p0.dims);
    }

    #[test]
    fn separatedness() {
        assert!(is_separated(&induced_projective(&"1,1".parse().unwrap(), 5).unwrap()));
        assert!(!is_separated(&simple_at(&"1".parse().unwrap(), 4).unwrap()));
        let p0 = free_module(CatKind::Fi, 0, 4).unwrap();
        let spaces = (0..=4).map(|n| if n == 0 { Subspace::zero(1) } else { Subspace::full(1) }).collect();
        let (sub, _) = submodule(&p0, spaces).unwrap();
        assert!(is_separated(&sub));
    }

    #[test]
    fn h0_local_matches_torsion_on_small_modules() {
        let corpus = vec![
            simple_at(&"1".parse().unwrap(), 4).unwrap(),
            free_module(CatKind::Fi, 1, 4).unwrap(),
            direct_sum(&[&free_module(CatKind::Oi, 1, 4).unwrap(), &simple_at_oi(2, 4).unwrap()]).unwrap(),
            simple_at_oi(1, 4).unwrap(),
        ];
        for v in corpus {
            let r = reliable_range(&v);
            let (a, b) = (torsion_spaces(&v), h0_local_spaces(&v));
            for n in 0..=r {
                assert_eq!(a[n], b[n], "degree {n}");
            }
        }
    }

    #[test]
    fn oi_torsion_closes_under_cofaces() {
        // P(1) modulo the image of α_{1,2}: degree-one vector killed by (1 ↦ 1) only.
        let p = free_module(CatKind::Oi, 1, 3).unwrap();
        let x = vec![q(1)];
        let image: Vec<Subspace> = (0..=3)
            .map(|n| {
                let vs: Vec<Vec<Q>> = crate::skelcat::hom_set(CatKind::Oi, 1, n)
                    .iter()
                    .filter(|f| f.values[0] > 1)
                    .map(|f| p.act(f, &x).unwrap())
                    .collect();
                Subspace::from_vectors(p.dims[n], &vs)
            })
            .collect();
        let (q_mod, _) = quotient(&p, image).unwrap();
        assert!(q_mod.validate().passed);
        let t = torsion_submodule(&q_mod).unwrap();
        assert!(t.torsion_part.validate().passed);
        assert_eq!(t.torsion_part.dims, vec![0, 1, 1, 1]);
        // The degree-one vector survives (1 ↦ 1) into every degree, so no power of
        // 𝔪 kills it: for OI the two notions part ways.
        assert_eq!(dims(&h0_local_spaces(&q_mod)), vec![0, 0, 0, 0]);
    }
}
