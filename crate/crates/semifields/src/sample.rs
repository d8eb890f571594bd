//! Seeded random generation of field elements and algebraic objects.
//!
//! All randomized suites in the crate draw from [`Sampler`], a ChaCha8 stream
//! cipher RNG seeded from a single u64, so runs are reproducible bit-for-bit
//! across machines for a fixed seed.

use crate::gf::{Elem, FieldCtx};
use crate::linpoly::LinPoly;
use crate::semifield::CubicalMult;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn elem(&mut self, ctx: &FieldCtx) -> Elem {
        Elem(self.rng.gen_range(0..ctx.order()) as u32)
    }

    pub fn nonzero_elem(&mut self, ctx: &FieldCtx) -> Elem {
        Elem(self.rng.gen_range(1..ctx.order()) as u32)
    }

    pub fn linpoly(&mut self, ctx: &FieldCtx) -> LinPoly {
        LinPoly::new((0..ctx.n()).map(|_| self.elem(ctx)).collect())
    }

    pub fn cubical(&mut self, ctx: &FieldCtx) -> CubicalMult {
        let n = ctx.n();
        let entries = (0..n * n).map(|_| self.elem(ctx)).collect();
        CubicalMult::new(ctx, entries).expect("entry count matches")
    }

    pub fn symmetric_cubical(&mut self, ctx: &FieldCtx) -> CubicalMult {
        let n = ctx.n();
        let mut c = CubicalMult::new(ctx, vec![ctx.zero(); n * n]).expect("sized");
        for i in 0..n {
            for j in i..n {
                let v = self.elem(ctx);
                c.set(i, j, v);
                c.set(j, i, v);
            }
        }
        c
    }

    /// Rejection-sample a presemifield multiplication.
    pub fn presemifield(&mut self, ctx: &FieldCtx) -> CubicalMult {
        loop {
            let c = self.cubical(ctx);
            if c.is_presemifield(ctx) {
                return c;
            }
        }
    }
}

impl Sampler {
    /// Random (f, g) tuples with the dimension conditions satisfied.
    pub fn bel_tuple(&mut self, ctx: &FieldCtx, r: usize) -> crate::bel::BelConfig {
        loop {
            let f = (0..r).map(|_| self.linpoly(ctx)).collect();
            let g = (0..r).map(|_| self.linpoly(ctx)).collect();
            let b = crate::bel::BelConfig::new(f, g).expect("tuple shape");
            if b.dims_ok(ctx) {
                return b;
            }
        }
    }

    /// Rejection-sample a configuration with the BEL property.
    pub fn bel_config(&mut self, ctx: &FieldCtx, r: usize) -> crate::bel::BelConfig {
        loop {
            let b = self.bel_tuple(ctx, r);
            if b.is_bel(ctx).expect("dims checked") {
                return b;
            }
        }
    }

    /// A BEL r = 3 configuration with g_3 = g_2 ∘ (λ·), so W contains the
    /// spread element through (0, -λ, 1) and the configuration reduces.
    pub fn reducible_r3(&mut self, ctx: &FieldCtx) -> crate::bel::BelConfig {
        loop {
            let lambda = self.nonzero_elem(ctx);
            let g2 = self.linpoly(ctx);
            let g3 = g2.compose(&LinPoly::scalar(lambda, ctx), ctx);
            let b = crate::bel::BelConfig::new(
                vec![self.linpoly(ctx), self.linpoly(ctx), self.linpoly(ctx)],
                vec![self.linpoly(ctx), g2, g3],
            )
            .expect("tuple shape");
            if b.dims_ok(ctx) && b.is_bel(ctx).expect("dims checked") {
                return b;
            }
        }
    }

    /// Rejection-sample an (a, b) pair with the BEL property.
    pub fn rank2_bel_pair(&mut self, ctx: &FieldCtx) -> crate::rank2::Rank2Pair {
        loop {
            let p = crate::rank2::Rank2Pair::new(self.linpoly(ctx), self.linpoly(ctx));
            if p.is_bel_pair(ctx) {
                return p;
            }
        }
    }

    /// A stabilizer element for the norm onto GF(q^{n/t}).
    pub fn stab_element(
        &mut self,
        ctx: &FieldCtx,
        t: usize,
        allow_swap: bool,
    ) -> crate::rank2::StabElement {
        use crate::rank2::{StabElement, StabKind};
        let n = ctx.n();
        let s = n / t;
        let steps = (n / s) as u64;
        loop {
            let k = self.nonzero_elem(ctx);
            let m = self.nonzero_elem(ctx);
            if ctx.rel_norm(k, t).unwrap() != ctx.rel_norm(m, t).unwrap() {
                continue;
            }
            let kind = if allow_swap && self.rng.gen_bool(0.5) {
                StabKind::Swap
            } else {
                StabKind::Plain
            };
            let gamma = crate::gf::Aut::new((self.rng.gen_range(0..steps) as usize * s) as i64, n);
            let delta = crate::gf::Aut::new((self.rng.gen_range(0..steps) as usize * s) as i64, n);
            let el = StabElement {
                kind,
                k,
                m,
                gamma,
                delta,
            };
            el.validate(t, ctx).expect("constructed to be valid");
            return el;
        }
    }
}
