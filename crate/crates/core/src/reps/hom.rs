use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::echelon::{Echelon, Rows};
use crate::linalg::kernel::{with_kernel, Kernel};
use crate::linalg::poly::vector_minpoly;
use crate::linalg::MatFp;

use super::meataxe::{factor_table, small_factors, Recipe};
use super::spin::packed_transposes;
use super::{Caps, Rep};

/// A basis of `Hom_G(V, W)`; each map is a `dim W × dim V` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<MatFp>,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A vector of `V` whose image is sought in the row space of `images`.
struct Seed {
    vector: Vec<u32>,
    images: MatFp,
}

fn check_compatible(v: &Rep, w: &Rep) -> Result<()> {
    if v.modulus() != w.modulus() {
        return Err(Error::DimensionMismatch(format!("GF({}) against GF({})", v.modulus(), w.modulus())));
    }
    if v.acting() != w.acting() {
        return Err(Error::DimensionMismatch(format!("{} and {} are modules for different groups", v.name(), w.name())));
    }
    Ok(())
}

/// Adds `x` to a spun subspace and closes it up again. False if `x` was already inside.
fn grow<K: Kernel>(k: K, gt: &[Vec<K::Row>], span: &mut Echelon<K>, x: &[u32], done: &mut usize) -> bool {
    let dim = span.len();
    if !span.add(k.pack(x)) {
        return false;
    }
    while *done < span.rank() && span.rank() < dim {
        let b = span.rows()[*done].clone();
        for g in gt {
            span.add(k.vec_mat(&b, g, dim));
        }
        *done += 1;
    }
    true
}

/// Vectors generating `V`, each with a subspace of `W` known to contain its
/// image under any homomorphism. A vector in the kernel of `f(θ)` on `V` must
/// map into the kernel of `f(θ)` on `W`, which keeps the unknowns few.
fn choose_seeds(v: &Rep, w: &Rep, caps: &Caps) -> Vec<Seed> {
    let p = v.modulus();
    let (dv, dw) = (v.dim(), w.dim());
    let gv = v.spin_gens();
    let gw = w.spin_gens();
    let mut seeds = Vec::new();
    with_kernel!(p, k => {
        let gt = packed_transposes(k, gv);
        let mut span: Echelon<_> = Echelon::new(k, dv);
        let mut done = 0;
        if !gv.is_empty() {
            let table = factor_table(p);
            let mut rng = ChaCha8Rng::seed_from_u64(caps.seed ^ 0x686f_6d);
            let attempts = caps.word_cap.min(12);
            for _ in 0..attempts {
                if span.rank() == dv {
                    break;
                }
                let recipe = Recipe::random(&mut rng, gv.len(), p);
                let tv = recipe.eval(gv);
                let x: Vec<u32> = (0..dv).map(|_| rng.gen_range(0..p)).collect();
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                let tw = recipe.eval(gw);
                for f in small_factors(&vector_minpoly(&tv, &x), &table).into_iter().take(2) {
                    let kv = f.eval_matrix(&tv).nullspace();
                    let mut kw: Option<MatFp> = None;
                    for i in 0..kv.dim() {
                        if span.rank() == dv {
                            break;
                        }
                        let n = kv.basis().row(i).to_vec();
                        if grow(k, &gt, &mut span, &n, &mut done) {
                            let images = kw.get_or_insert_with(|| f.eval_matrix(&tw).nullspace().basis().clone()).clone();
                            seeds.push(Seed { vector: n, images });
                        }
                    }
                }
            }
        }
        for i in 0..dv {
            if span.rank() == dv {
                break;
            }
            let e = super::meataxe::unit(dv, i);
            if grow(k, &gt, &mut span, &e, &mut done) {
                seeds.push(Seed { vector: e, images: MatFp::identity(dw, p) });
            }
        }
    });
    seeds
}

/// Spins the seeds while tracking the image of each basis vector as a linear
/// function of the unknown seed images. Every dependency found while spinning
/// is a linear condition on the unknowns, and `Hom` is their solution space.
fn solve_hom(v: &Rep, w: &Rep, caps: &Caps, want_maps: bool) -> Result<(usize, Vec<MatFp>)> {
    check_compatible(v, w)?;
    let p = v.modulus();
    let (dv, dw) = (v.dim(), w.dim());
    if dv == 0 || dw == 0 {
        return Ok((0, Vec::new()));
    }
    if dv.max(dw) > caps.dim_cap {
        return Err(Error::ResourceCap(format!("dimension {} exceeds the cap {}", dv.max(dw), caps.dim_cap)));
    }
    let seeds = choose_seeds(v, w, caps);
    let total: usize = seeds.iter().map(|s| s.images.nrows()).sum();
    if total == 0 {
        return Ok((0, Vec::new()));
    }
    with_kernel!(p, k => {
        let gv = packed_transposes(k, v.spin_gens());
        let gw = packed_transposes(k, w.spin_gens());
        let mut basis: Echelon<_, Rows<_>> = Echelon::new(k, dv);
        let mut cons: Echelon<_> = Echelon::new(k, total);
        let mut scratch = vec![vec![0u32; dw]; total];
        let mut constrain = |res: Rows<_>, cons: &mut Echelon<_>| {
            for (u, r) in res.0.iter().enumerate() {
                k.unpack_into(r, &mut scratch[u]);
            }
            for c in 0..dw {
                let col: Vec<u32> = scratch.iter().map(|r| r[c]).collect();
                if col.iter().any(|&x| x != 0) {
                    cons.add(k.pack(&col));
                }
            }
        };
        let mut offset = 0;
        let mut done = 0;
        for s in &seeds {
            let mut pay = vec![k.zero_row(dw); total];
            for r in 0..s.images.nrows() {
                pay[offset + r] = k.pack(s.images.row(r));
            }
            offset += s.images.nrows();
            if let Some(res) = basis.insert(k.pack(&s.vector), Rows(pay)) {
                constrain(res, &mut cons);
            }
            while done < basis.rank() {
                if cons.rank() == total {
                    return Ok((0, Vec::new()));
                }
                let b = basis.rows()[done].clone();
                let pb = basis.payloads()[done].0.clone();
                for (a, aw) in gv.iter().zip(&gw) {
                    let nv = k.vec_mat(&b, a, dv);
                    let np = pb
                        .iter()
                        .map(|r| if k.is_zero(r) { r.clone() } else { k.vec_mat(r, aw, dw) })
                        .collect();
                    if let Some(res) = basis.insert(nv, Rows(np)) {
                        constrain(res, &mut cons);
                    }
                }
                done += 1;
            }
        }
        if basis.rank() != dv {
            return Err(Error::Inconclusive("seed vectors do not generate the source module".into()));
        }
        let crows: Vec<Vec<u32>> = cons.rows().iter().map(|r| k.unpack(r, total)).collect();
        let sol = MatFp::from_rows(p, &crows, total).nullspace();
        if !want_maps || sol.dim() == 0 {
            return Ok((sol.dim(), Vec::new()));
        }
        let bm = MatFp::from_packed(k, basis.rows(), dv);
        let binv = bm.inverse().expect("echelon basis is invertible");
        let mut maps = Vec::with_capacity(sol.dim());
        for i in 0..sol.dim() {
            let y = sol.basis().row(i);
            let mut ym = vec![k.zero_row(dw); dv];
            for (j, pay) in basis.payloads().iter().enumerate() {
                for (u, &c) in y.iter().enumerate() {
                    if c != 0 {
                        k.axpy(&mut ym[j], c, &pay.0[u]);
                    }
                }
            }
            maps.push(binv.mul(&MatFp::from_packed(k, &ym, dw)).transpose());
        }
        Ok((maps.len(), maps))
    })
}

pub fn hom_dim(v: &Rep, w: &Rep, caps: &Caps) -> Result<usize> {
    Ok(solve_hom(v, w, caps, false)?.0)
}

pub fn hom_space(v: &Rep, w: &Rep, caps: &Caps) -> Result<HomSpace> {
    let (_, basis) = solve_hom(v, w, caps, true)?;
    Ok(HomSpace { basis, source_dim: v.dim(), target_dim: w.dim() })
}

pub fn end_dim(v: &Rep, caps: &Caps) -> Result<usize> {
    hom_dim(v, v, caps)
}

/// Looks for an invertible homomorphism: exhaustively when `Hom` is small,
/// by random combinations otherwise.
pub fn is_isomorphic(v: &Rep, w: &Rep, caps: &Caps) -> Result<bool> {
    check_compatible(v, w)?;
    if v.dim() != w.dim() {
        return Ok(false);
    }
    if v.dim() == 0 {
        return Ok(true);
    }
    let hs = hom_space(v, w, caps)?;
    let p = v.modulus();
    let h = hs.dim();
    if h == 0 {
        return Ok(false);
    }
    let combine = |coeffs: &[u32]| {
        let mut m = MatFp::zeros(w.dim(), v.dim(), p);
        for (b, &c) in hs.basis.iter().zip(coeffs) {
            if c != 0 {
                m.add_scaled(c, b);
            }
        }
        m
    };
    let exhaustive = (p as u64).checked_pow(h as u32).filter(|&c| c <= 729);
    if let Some(count) = exhaustive {
        for idx in 1..count {
            let mut x = idx;
            let coeffs: Vec<u32> = (0..h)
                .map(|_| {
                    let c = (x % p as u64) as u32;
                    x /= p as u64;
                    c
                })
                .collect();
            if combine(&coeffs).rank() == v.dim() {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed ^ 0x69_736f);
    for _ in 0..caps.word_cap.max(1) {
        let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if combine(&coeffs).rank() == v.dim() {
            return Ok(true);
        }
    }
    Err(Error::Inconclusive(format!(
        "no isomorphism between {} and {} found among {} random homomorphisms",
        v.name(),
        w.name(),
        caps.word_cap
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::perm_groups::{symmetric, Permutation};
    use crate::reps::{irreducible, specht, subset_module};

    fn intertwines(v: &Rep, w: &Rep, f: &MatFp) -> bool {
        v.gens().iter().zip(w.gens()).all(|(a, b)| f.mul(a) == b.mul(f))
    }

    #[test]
    fn permutation_module_homs() {
        let caps = Caps::default();
        for p in [2, 3, 5] {
            let m1 = subset_module(5, p, 1).unwrap();
            let m2 = subset_module(5, p, 2).unwrap();
            // orbit counts of S_5 on pairs of subsets
            assert_eq!(end_dim(&m1, &caps).unwrap(), 2);
            assert_eq!(hom_dim(&m1, &m2, &caps).unwrap(), 2);
            assert_eq!(end_dim(&m2, &caps).unwrap(), 3);
            let hs = hom_space(&m1, &m2, &caps).unwrap();
            for f in &hs.basis {
                assert!(intertwines(&m1, &m2, f));
            }
        }
    }

    #[test]
    fn irreducibles_have_scalar_endomorphisms() {
        let caps = Caps::default();
        let d = irreducible(&Partition::from_parts(&[3, 2, 1]), 5).unwrap();
        assert_eq!(end_dim(&d, &caps).unwrap(), 1);
        let s = specht(&Partition::from_parts(&[3, 1]), 2).unwrap();
        let t = irreducible(&Partition::from_parts(&[3, 1]), 2).unwrap();
        assert_eq!(hom_dim(&s, &t, &caps).unwrap(), 1);
        assert_eq!(hom_dim(&t, &s, &caps).unwrap(), 0);
    }

    #[test]
    fn isomorphism_detection() {
        let caps = Caps::default();
        let d = irreducible(&Partition::from_parts(&[4, 2]), 3).unwrap();
        // conjugating by a random invertible matrix gives an isomorphic module
        let q = MatFp::from_i64_rows(3, &[
            vec![1, 1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 1],
        ]);
        let qi = q.inverse().unwrap();
        let gens = d.gens().iter().map(|g| q.mul(g).mul(&qi)).collect();
        let e = Rep::new(3, d.dim(), d.acting().clone(), gens, "conjugate").unwrap();
        assert!(is_isomorphic(&d, &e, &caps).unwrap());
        assert!(!is_isomorphic(&d, &d.sign_twist(), &caps).unwrap());
    }

    #[test]
    fn homs_of_restrictions() {
        let caps = Caps::default();
        let g = crate::perm_groups::PermGroup::new(5, vec![Permutation::parse("(1,2,3,4,5)", 5).unwrap()]).unwrap();
        let m1 = subset_module(5, 2, 1).unwrap().restrict(&g).unwrap();
        // C_5 acts regularly, so End is the group algebra
        assert_eq!(end_dim(&m1, &caps).unwrap(), 5);
        let s5 = symmetric(5);
        let full = subset_module(5, 2, 1).unwrap().restrict(&s5).unwrap();
        assert_eq!(end_dim(&full, &caps).unwrap(), 2);
    }
}
