//! Brute-force isotopy testing at desk scale.
//!
//! An isotopism (A, B, C) satisfies S₂(A(x), B(y)) = C(S₁(x,y)). The search
//! enumerates invertible (A, B) in a fixed lexicographic coefficient order
//! and solves for C from the basis row x = 1, so the naive triple search
//! shrinks by a factor of |GL(n,q)|. Nucleus invariants prune non-isotopic
//! pairs before any enumeration. Budgets are size-based, never wall-clock,
//! so results are deterministic; the parallel path scans fixed blocks of the
//! A-range and takes the lexicographically smallest witness of the first
//! block that contains one.

use crate::gf::{Elem, FieldCtx};
use crate::linpoly::LinPoly;
use crate::semifield::{CubicalMult, Nuclei};
use crate::{Error, Result};
use rayon::prelude::*;

/// Default cap on the field order for the brute-force search.
pub const DEFAULT_BUDGET: u64 = 27;

const PAR_BLOCK: usize = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Isotopism {
    pub a: LinPoly,
    pub b: LinPoly,
    pub c: LinPoly,
}

impl Isotopism {
    pub fn identity(ctx: &FieldCtx) -> Isotopism {
        Isotopism {
            a: LinPoly::identity(ctx),
            b: LinPoly::identity(ctx),
            c: LinPoly::identity(ctx),
        }
    }

    /// Exhaustive verification of the defining identity on all q^{2n} pairs.
    pub fn verify(&self, s1: &CubicalMult, s2: &CubicalMult, ctx: &FieldCtx) -> bool {
        if !self.a.is_invertible(ctx) || !self.b.is_invertible(ctx) || !self.c.is_invertible(ctx) {
            return false;
        }
        for x in ctx.elems() {
            let ax = self.a.evaluate(x, ctx);
            for y in ctx.elems() {
                let lhs = s2.mult(ax, self.b.evaluate(y, ctx), ctx);
                let rhs = self.c.evaluate(s1.mult(x, y, ctx), ctx);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Isotopy-invariant record used for pruning and reporting.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InvariantRecord {
    pub q: u64,
    pub n: usize,
    pub nuclei: Nuclei,
}

pub fn invariants(c: &CubicalMult, ctx: &FieldCtx) -> Result<InvariantRecord> {
    Ok(InvariantRecord {
        q: ctx.q(),
        n: ctx.n(),
        nuclei: c.nuclei(ctx)?,
    })
}

/// Largest coefficient-space size the enumeration will attempt.
const MAX_ENUMERATION: u64 = 1 << 24;

/// All invertible linearized polynomials, in lexicographic coefficient order.
fn gl_elements(ctx: &FieldCtx) -> Result<Vec<LinPoly>> {
    let n = ctx.n();
    let qn = ctx.order();
    let total = qn
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_ENUMERATION)
        .ok_or(Error::BudgetExceeded {
            order: qn,
            budget: MAX_ENUMERATION,
        })?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut coeffs = Vec::with_capacity(n);
        for _ in 0..n {
            coeffs.push(Elem((rest % qn) as u32));
            rest /= qn;
        }
        // the low digit is the leading coefficient index so that the order
        // is lexicographic in (c_0, ..., c_{n-1})
        coeffs.reverse();
        let f = LinPoly::new(coeffs);
        if f.is_invertible(ctx) {
            out.push(f);
        }
    }
    Ok(out)
}

struct Search<'a> {
    ctx: &'a FieldCtx,
    s1: &'a CubicalMult,
    s2: &'a CubicalMult,
    gl: Vec<LinPoly>,
    basis_imgs: Vec<Vec<Elem>>,
    l1_inv: LinPoly,
    s1_basis: Vec<Vec<Elem>>,
}

impl<'a> Search<'a> {
    fn new(ctx: &'a FieldCtx, s1: &'a CubicalMult, s2: &'a CubicalMult) -> Result<Search<'a>> {
        let gl = gl_elements(ctx)?;
        let basis = ctx.power_basis().to_vec();
        let basis_imgs = gl
            .iter()
            .map(|f| basis.iter().map(|&b| f.evaluate(b, ctx)).collect())
            .collect();
        let l1_inv = s1
            .left_mult(ctx.one(), ctx)
            .comp_inverse(ctx)
            .expect("presemifield left multiplications are invertible");
        let s1_basis = basis
            .iter()
            .map(|&u| basis.iter().map(|&v| s1.mult(u, v, ctx)).collect())
            .collect();
        Ok(Search {
            ctx,
            s1,
            s2,
            gl,
            basis_imgs,
            l1_inv,
            s1_basis,
        })
    }

    /// Try a concrete (A, B): solve for C from the x = 1 row, check the
    /// remaining basis rows, then verify exhaustively.
    fn try_pair(&self, ai: usize, bi: usize) -> Option<Isotopism> {
        let ctx = self.ctx;
        let l2 = self.l2_for(ai);
        if !self.consistent(ai, bi, &l2) {
            return None;
        }
        let c = l2.compose(&self.gl[bi], ctx).compose(&self.l1_inv, ctx);
        let iso = Isotopism {
            a: self.gl[ai].clone(),
            b: self.gl[bi].clone(),
            c,
        };
        // soundness: every returned witness re-verifies exhaustively
        if iso.verify(self.s1, self.s2, ctx) {
            Some(iso)
        } else {
            None
        }
    }

    fn l2_for(&self, ai: usize) -> LinPoly {
        let ctx = self.ctx;
        let a_one = self.gl[ai].evaluate(ctx.one(), ctx);
        self.s2.left_mult(a_one, ctx)
    }

    /// C = L2_{A(1)} ∘ B ∘ L1⁻¹ by definition; check the remaining basis
    /// rows against it, evaluating the chain pointwise.
    fn consistent(&self, ai: usize, bi: usize, l2: &LinPoly) -> bool {
        let ctx = self.ctx;
        let n = ctx.n();
        let b = &self.gl[bi];
        for u in 1..n {
            let au = self.basis_imgs[ai][u];
            for v in 0..n {
                let lhs = self.s2.mult(au, self.basis_imgs[bi][v], ctx);
                let rhs = l2.evaluate(
                    b.evaluate(self.l1_inv.evaluate(self.s1_basis[u][v], ctx), ctx),
                    ctx,
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn scan_a(&self, ai: usize) -> Option<(usize, usize)> {
        let l2 = self.l2_for(ai);
        (0..self.gl.len())
            .find(|&bi| self.consistent(ai, bi, &l2))
            .map(|bi| (ai, bi))
    }
}

/// Complete search for an isotopism between two presemifields of order at
/// most `budget`; `jobs` > 1 partitions the A-range across threads with a
/// deterministic tie-break.
pub fn isotopic_bruteforce(
    s1: &CubicalMult,
    s2: &CubicalMult,
    ctx: &FieldCtx,
    budget: u64,
    jobs: usize,
) -> Result<Option<Isotopism>> {
    if ctx.order() > budget {
        return Err(Error::BudgetExceeded {
            order: ctx.order(),
            budget,
        });
    }
    if !s1.is_presemifield(ctx) || !s2.is_presemifield(ctx) {
        return Err(Error::NotPresemifield);
    }
    // invariant pruning: completeness-preserving short circuit
    if invariants(s1, ctx)? != invariants(s2, ctx)? {
        return Ok(None);
    }
    search_exhaustive(s1, s2, ctx, jobs)
}

/// The enumeration itself, without the invariant short circuit; exposed so
/// the verification suite can confirm that pruning never hides a witness.
pub fn search_exhaustive(
    s1: &CubicalMult,
    s2: &CubicalMult,
    ctx: &FieldCtx,
    jobs: usize,
) -> Result<Option<Isotopism>> {
    let search = Search::new(ctx, s1, s2)?;

    // reflexive fast path: the identity triple, when it works
    let id = Isotopism::identity(ctx);
    let id_c = s2.left_mult(ctx.one(), ctx).compose(&search.l1_inv, ctx);
    let id_iso = Isotopism { c: id_c, ..id };
    if id_iso.verify(s1, s2, ctx) {
        return Ok(Some(id_iso));
    }

    let total = search.gl.len();
    let found = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        let mut hit = None;
        for block_start in (0..total).step_by(PAR_BLOCK) {
            let block_end = (block_start + PAR_BLOCK).min(total);
            let block_hit = pool.install(|| {
                (block_start..block_end)
                    .into_par_iter()
                    .filter_map(|ai| search.scan_a(ai))
                    .min()
            });
            if block_hit.is_some() {
                hit = block_hit;
                break;
            }
        }
        hit
    } else {
        (0..total).find_map(|ai| search.scan_a(ai))
    };

    Ok(found.map(|(ai, bi)| {
        search
            .try_pair(ai, bi)
            .expect("basis-consistent pair must verify exhaustively")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use crate::semifield::KnuthWord;

    fn ctx23() -> FieldCtx {
        FieldCtx::new(2, 1, 3).unwrap()
    }

    #[test]
    fn reflexive_search_returns_identity() {
        let ctx = ctx23();
        let mut s = Sampler::new(5);
        let c = s.presemifield(&ctx);
        let iso = isotopic_bruteforce(&c, &c, &ctx, DEFAULT_BUDGET, 1)
            .unwrap()
            .unwrap();
        assert_eq!(iso.a, LinPoly::identity(&ctx));
        assert_eq!(iso.b, LinPoly::identity(&ctx));
        assert!(iso.verify(&c, &c, &ctx));
    }

    #[test]
    fn precomposition_isotope_is_found() {
        let ctx = ctx23();
        let mut s = Sampler::new(9);
        let c = s.presemifield(&ctx);
        let a = loop {
            let f = s.linpoly(&ctx);
            if f.is_invertible(&ctx) {
                break f;
            }
        };
        let c2 = CubicalMult::from_bilinear(|x, y| c.mult(a.evaluate(x, &ctx), y, &ctx), &ctx);
        let iso = isotopic_bruteforce(&c, &c2, &ctx, DEFAULT_BUDGET, 1)
            .unwrap()
            .expect("isotope by construction");
        assert!(iso.verify(&c, &c2, &ctx));
    }

    #[test]
    fn parallel_matches_sequential() {
        let ctx = ctx23();
        let mut s = Sampler::new(13);
        let c = s.presemifield(&ctx);
        let c2 = c.knuth(KnuthWord::T, &ctx).unwrap();
        let seq = isotopic_bruteforce(&c, &c2, &ctx, DEFAULT_BUDGET, 1).unwrap();
        let par = isotopic_bruteforce(&c, &c2, &ctx, DEFAULT_BUDGET, 2).unwrap();
        match (seq, par) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                assert_eq!(x, y);
                assert!(x.verify(&c, &c2, &ctx));
            }
            other => panic!("parallel/sequential disagree: {other:?}"),
        }
    }

    #[test]
    fn order_eight_presemifields_are_field_isotopes() {
        let ctx = ctx23();
        let field = CubicalMult::field(&ctx);
        let mut s = Sampler::new(17);
        for _ in 0..5 {
            let c = s.presemifield(&ctx);
            let iso = isotopic_bruteforce(&c, &field, &ctx, DEFAULT_BUDGET, 1)
                .unwrap()
                .expect("order 8 admits only the field up to isotopy");
            assert!(iso.verify(&c, &field, &ctx));
        }
    }

    #[test]
    fn budget_and_validity_errors() {
        let ctx = FieldCtx::new(2, 1, 5).unwrap();
        let f = CubicalMult::field(&ctx);
        assert_eq!(
            isotopic_bruteforce(&f, &f, &ctx, DEFAULT_BUDGET, 1),
            Err(Error::BudgetExceeded {
                order: 32,
                budget: 27
            })
        );
        let ctx2 = ctx23();
        let zero = CubicalMult::new(&ctx2, vec![ctx2.zero(); 9]).unwrap();
        let f2 = CubicalMult::field(&ctx2);
        assert_eq!(
            isotopic_bruteforce(&zero, &f2, &ctx2, DEFAULT_BUDGET, 1),
            Err(Error::NotPresemifield)
        );
    }

    #[test]
    fn invariants_of_field() {
        let ctx = ctx23();
        let rec = invariants(&CubicalMult::field(&ctx), &ctx).unwrap();
        assert_eq!(rec.nuclei.left, 8);
        assert_eq!(rec.nuclei.centre, 8);
    }
}
