//! BEL-configurations (D_{r,n,q}, U_f, W_g) and their semifields.
//!
//! A configuration is stored as the r-tuples f, g of linearized polynomials
//! with U_f = {(f_1(x),…,f_r(x))} and W_g = {v : Σ g_i(v_i) = 0}. The
//! associated multiplication is S_{f,g}(x,y) = Σ g_i(f_i(x)·y); the BEL
//! property is exactly the absence of zero divisors, with the geometric
//! characterizations kept as independently coded routes for cross-checking.
//!
//! The ambient Desarguesian spread is always the fixed one obtained by field
//! reduction; other spreads are reached only through moves on (f, g).

use crate::gf::{Elem, FieldCtx};
use crate::linpoly::LinPoly;
use crate::mat::Mat;
use crate::semifield::{CubicalMult, SemifieldSpread, SpreadMember};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BelConfig {
    f: Vec<LinPoly>,
    g: Vec<LinPoly>,
}

impl BelConfig {
    pub fn new(f: Vec<LinPoly>, g: Vec<LinPoly>) -> Result<BelConfig> {
        if f.len() < 2 || f.len() != g.len() {
            return Err(Error::InvalidArgument(
                "configuration needs matching f/g tuples with r >= 2".into(),
            ));
        }
        let n = f[0].n();
        if f.iter().chain(g.iter()).any(|h| h.n() != n) {
            return Err(Error::InvalidArgument(
                "all tuple entries must have the same coefficient length".into(),
            ));
        }
        Ok(BelConfig { f, g })
    }

    /// The field itself: f = (1, 0), g = (1, 0).
    pub fn field(ctx: &FieldCtx) -> BelConfig {
        let n = ctx.n();
        BelConfig {
            f: vec![LinPoly::identity(ctx), LinPoly::zero(n)],
            g: vec![LinPoly::identity(ctx), LinPoly::zero(n)],
        }
    }

    /// The r = 2 configuration f = (1, c^{1/β} x^{α/β}), g = (1, -x^β)
    /// whose multiplication is the twisted field xy - c x^α y^β.
    pub fn gtf_config(params: &crate::gtf::GtfParams, ctx: &FieldCtx) -> BelConfig {
        let n = ctx.n();
        let c_over_beta = ctx.frob_aut(params.c, params.b.inverse(n));
        let exp = params.a.quotient(params.b, n);
        BelConfig {
            f: vec![
                LinPoly::identity(ctx),
                LinPoly::monomial(c_over_beta, exp.index(), ctx),
            ],
            g: vec![
                LinPoly::identity(ctx),
                LinPoly::monomial(ctx.neg(ctx.one()), params.b.index(), ctx),
            ],
        }
    }

    pub fn r(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self) -> &[LinPoly] {
        &self.f
    }

    pub fn g(&self) -> &[LinPoly] {
        &self.g
    }

    /// The point (f_1(x), …, f_r(x)) of U_f.
    pub fn u_point(&self, x: Elem, ctx: &FieldCtx) -> Vec<Elem> {
        self.f.iter().map(|fi| fi.evaluate(x, ctx)).collect()
    }

    /// Injectivity of F and surjectivity of G, by rank.
    pub fn dims_ok(&self, ctx: &FieldCtx) -> bool {
        let n = ctx.n();
        let r = self.r();
        // stacked rn×n matrix of f
        let mut fm = Mat::zero(r * n, n);
        for (i, fi) in self.f.iter().enumerate() {
            let m = fi.to_matrix(ctx);
            for a in 0..n {
                for b in 0..n {
                    fm.set(i * n + a, b, m.at(a, b));
                }
            }
        }
        if fm.rank(ctx) != n {
            return false;
        }
        self.g_matrix(ctx).rank(ctx) == n
    }

    /// The n×rn matrix of G(x_1,…,x_r) = Σ g_i(x_i) over GF(q).
    fn g_matrix(&self, ctx: &FieldCtx) -> Mat {
        let n = ctx.n();
        let r = self.r();
        let mut gm = Mat::zero(n, r * n);
        for (i, gi) in self.g.iter().enumerate() {
            let m = gi.to_matrix(ctx);
            for a in 0..n {
                for b in 0..n {
                    gm.set(a, i * n + b, m.at(a, b));
                }
            }
        }
        gm
    }

    /// S_{f,g}(x,y) = Σ g_i(f_i(x)·y).
    pub fn mult(&self, x: Elem, y: Elem, ctx: &FieldCtx) -> Elem {
        let mut acc = ctx.zero();
        for (fi, gi) in self.f.iter().zip(&self.g) {
            let t = ctx.mul(fi.evaluate(x, ctx), y);
            acc = ctx.add(acc, gi.evaluate(t, ctx));
        }
        acc
    }

    /// Cubical expansion: c_{(a+b) mod n, b} accumulates Σ_i g_{ib}·f_{ia}^{q^b}.
    pub fn to_cubical(&self, ctx: &FieldCtx) -> CubicalMult {
        let n = ctx.n();
        let mut cub = CubicalMult::new(ctx, vec![ctx.zero(); n * n]).expect("sized");
        for (fi, gi) in self.f.iter().zip(&self.g) {
            for (a, &fa) in fi.coeffs().iter().enumerate() {
                if fa.is_zero() {
                    continue;
                }
                for (b, &gb) in gi.coeffs().iter().enumerate() {
                    if gb.is_zero() {
                        continue;
                    }
                    let i = (a + b) % n;
                    let term = ctx.mul(gb, ctx.frobenius(fa, b));
                    cub.set(i, b, ctx.add(cub.at(i, b), term));
                }
            }
        }
        cub
    }

    /// BEL property: the multiplication has no zero divisors.
    pub fn is_bel(&self, ctx: &FieldCtx) -> Result<bool> {
        if !self.dims_ok(ctx) {
            return Err(Error::DimsCheckFailed);
        }
        Ok(self.to_cubical(ctx).is_presemifield(ctx))
    }

    /// The spread {(y, Σ g_i(f_i(x)·y)) : y} ∪ {A_∞}, i.e. the graphs of the
    /// left multiplications, interpolated directly from the configuration.
    pub fn bel_spread(&self, ctx: &FieldCtx) -> Result<SemifieldSpread> {
        if !self.is_bel(ctx)? {
            return Err(Error::NotBel);
        }
        let members = ctx
            .elems()
            .map(|x| SpreadMember::Graph(LinPoly::from_map(|y| self.mult(x, y, ctx), ctx)))
            .chain(std::iter::once(SpreadMember::Infinity))
            .collect();
        Ok(SemifieldSpread { members })
    }

    /// Search for a nonzero v with B(v) ⊆ W_g, i.e. Σ g_i ∘ (mult by v_i)
    /// the zero map. The conditions are F_{q^n}-linear in v, so this is a
    /// kernel computation; the first basis vector is returned, scaled so its
    /// first nonzero coordinate is 1.
    pub fn find_spread_element_in_w(&self, ctx: &FieldCtx) -> Result<Option<Vec<Elem>>> {
        if !self.dims_ok(ctx) {
            return Err(Error::DimsCheckFailed);
        }
        let n = ctx.n();
        let r = self.r();
        let m = Mat::from_fn(n, r, |k, i| {
            ctx.frobenius(self.g[i].coeffs()[k], (n - k) % n)
        });
        let kernel = m.kernel_basis(ctx);
        let Some(first) = kernel.into_iter().next() else {
            return Ok(None);
        };
        let pivot = first
            .iter()
            .position(|v| !v.is_zero())
            .expect("kernel basis vectors are nonzero");
        let scale = ctx.inv(first[pivot]).expect("pivot is nonzero");
        let v: Vec<Elem> = first.iter().map(|&c| ctx.mul(scale, c)).collect();
        debug_assert!({
            let sum = (0..r).fold(LinPoly::zero(n), |acc, i| {
                acc.add(&self.g[i].compose(&LinPoly::scalar(v[i], ctx), ctx), ctx)
            });
            sum.is_zero()
        });
        Ok(Some(v))
    }

    /// Drop one coordinate when W contains a spread element, preserving the
    /// multiplication pointwise: f'_i = f_i - v_i·f_k, g' forgets index k.
    pub fn reduce_r(&self, ctx: &FieldCtx) -> Result<BelConfig> {
        if self.r() == 2 {
            return Err(Error::ReductionTooSmall);
        }
        let v = self
            .find_spread_element_in_w(ctx)?
            .ok_or(Error::NotReducible)?;
        let k = v.iter().position(|c| !c.is_zero()).expect("v is nonzero");
        debug_assert_eq!(v[k], ctx.one());
        let mut f = Vec::with_capacity(self.r() - 1);
        let mut g = Vec::with_capacity(self.r() - 1);
        for i in 0..self.r() {
            if i == k {
                continue;
            }
            f.push(self.f[i].sub(&self.f[k].scale(v[i], ctx), ctx));
            g.push(self.g[i].clone());
        }
        BelConfig::new(f, g)
    }

    /// ⊥-transpose (ĝ, f̂); its cubical array is the Knuth transpose of the
    /// original.
    pub fn perp_transpose(&self, ctx: &FieldCtx) -> Result<BelConfig> {
        if !self.dims_ok(ctx) {
            return Err(Error::DimsCheckFailed);
        }
        let f = self.g.iter().map(|gi| gi.adjoint(ctx)).collect();
        let g = self.f.iter().map(|fi| fi.adjoint(ctx)).collect();
        BelConfig::new(f, g)
    }

    /// The list ψ_g(F(x)) for x ∈ F_{q^n}: the spread set of the dual.
    pub fn psi_image(&self, ctx: &FieldCtx) -> Result<Vec<LinPoly>> {
        if !self.dims_ok(ctx) {
            return Err(Error::DimsCheckFailed);
        }
        Ok(ctx
            .elems()
            .map(|x| self.psi_of(&self.u_point(x, ctx), ctx))
            .collect())
    }

    /// ψ_g(v): the endomorphism z ↦ Σ g_i(v_i·z).
    pub fn psi_of(&self, v: &[Elem], ctx: &FieldCtx) -> LinPoly {
        let n = ctx.n();
        let mut coeffs = vec![ctx.zero(); n];
        for (i, gi) in self.g.iter().enumerate() {
            for (k, slot) in coeffs.iter_mut().enumerate() {
                *slot = ctx.add(*slot, ctx.mul(gi.coeffs()[k], ctx.frobenius(v[i], k)));
            }
        }
        LinPoly::new(coeffs)
    }

    /// The canonical r = n configuration g_i = x^{q^i}, f_i = l_i^{q^{-i}}
    /// reproducing a given cubical multiplication exactly.
    pub fn canonical_from_cubical(cub: &CubicalMult, ctx: &FieldCtx) -> BelConfig {
        let n = ctx.n();
        let mut f = Vec::with_capacity(n);
        let mut g = Vec::with_capacity(n);
        for j in 0..n {
            let lj = LinPoly::new((0..n).map(|i| cub.at(i, j)).collect());
            f.push(LinPoly::monomial(ctx.one(), (n - j) % n, ctx).compose(&lj, ctx));
            g.push(LinPoly::monomial(ctx.one(), j, ctx));
        }
        BelConfig { f, g }
    }
}

/// The equivalent characterizations of the BEL property, each computed by an
/// independent route.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BelpropReport {
    /// S_{f,g} has no zero divisors (exhaustive product scan).
    pub zero_divisor_free: bool,
    /// No element of U^× is an F_{q^n}-multiple of an element of W^× (pair scan).
    pub no_fqn_multiple: bool,
    /// B(U) ∩ B(W) = ∅ (normalized direction sets).
    pub spread_sets_disjoint: bool,
    /// U ∩ B̃(W) = ∅.
    pub u_avoids_btilde_w: bool,
    /// W ∩ B̃(U) = ∅.
    pub w_avoids_btilde_u: bool,
}

impl BelpropReport {
    pub fn all_agree(&self) -> bool {
        let v = self.zero_divisor_free;
        self.no_fqn_multiple == v
            && self.spread_sets_disjoint == v
            && self.u_avoids_btilde_w == v
            && self.w_avoids_btilde_u == v
    }

    pub fn verdict(&self) -> bool {
        self.zero_divisor_free
    }
}

/// Normalize a nonzero vector to projective form (first nonzero coord 1).
fn direction(v: &[Elem], ctx: &FieldCtx) -> Vec<Elem> {
    let pivot = v.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    let scale = ctx.inv(v[pivot]).expect("pivot nonzero");
    v.iter().map(|&c| ctx.mul(scale, c)).collect()
}

/// All nonzero points of W_g, enumerated from a kernel basis of G over GF(q).
fn w_points(b: &BelConfig, ctx: &FieldCtx) -> Vec<Vec<Elem>> {
    let n = ctx.n();
    let r = b.r();
    let basis = b.g_matrix(ctx).kernel_basis(ctx);
    let dim = basis.len();
    let subfield = ctx.subfield_elems();
    let q = subfield.len() as u64;
    let total = q.pow(dim as u32);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut point = vec![ctx.zero(); r * n];
        let mut rest = idx;
        for bvec in basis.iter() {
            let coef = subfield[(rest % q) as usize];
            rest /= q;
            if !coef.is_zero() {
                for (slot, &bc) in point.iter_mut().zip(bvec.iter()) {
                    *slot = ctx.add(*slot, ctx.mul(coef, bc));
                }
            }
        }
        let tuple: Vec<Elem> = (0..r)
            .map(|i| ctx.from_coords_q(&point[i * n..(i + 1) * n]))
            .collect();
        out.push(tuple);
    }
    out
}

/// Evaluate the five equivalences of the BEL property by independent routes.
pub fn belprop_routes(b: &BelConfig, ctx: &FieldCtx) -> Result<BelpropReport> {
    if !b.dims_ok(ctx) {
        return Err(Error::DimsCheckFailed);
    }
    // route 1: zero divisors of the multiplication
    let mut zero_divisor_free = true;
    'zscan: for x in ctx.nonzero_elems() {
        for y in ctx.nonzero_elems() {
            if b.mult(x, y, ctx).is_zero() {
                zero_divisor_free = false;
                break 'zscan;
            }
        }
    }

    let u_pts: Vec<Vec<Elem>> = ctx.nonzero_elems().map(|x| b.u_point(x, ctx)).collect();
    let w_pts = w_points(b, ctx);

    // route 2: literal multiple scan u = α·w
    let mut multiple_found = false;
    'mscan: for u in &u_pts {
        for w in &w_pts {
            let pivot = w.iter().position(|c| !c.is_zero()).expect("nonzero");
            if u[pivot].is_zero() {
                continue;
            }
            let alpha = ctx.div(u[pivot], w[pivot]).expect("pivot nonzero");
            if u.iter().zip(w).all(|(&ui, &wi)| ui == ctx.mul(alpha, wi)) {
                multiple_found = true;
                break 'mscan;
            }
        }
    }

    // routes 3-5: normalized direction sets
    use std::collections::HashSet;
    let bu: HashSet<Vec<Elem>> = u_pts.iter().map(|u| direction(u, ctx)).collect();
    let bw: HashSet<Vec<Elem>> = w_pts.iter().map(|w| direction(w, ctx)).collect();
    let spread_sets_disjoint = bu.is_disjoint(&bw);
    let u_avoids_btilde_w = u_pts.iter().all(|u| !bw.contains(&direction(u, ctx)));
    let w_avoids_btilde_u = w_pts.iter().all(|w| !bu.contains(&direction(w, ctx)));

    Ok(BelpropReport {
        zero_divisor_free,
        no_fqn_multiple: !multiple_found,
        spread_sets_disjoint,
        u_avoids_btilde_w,
        w_avoids_btilde_u,
    })
}

/// Write a symmetric matrix over F_{q^n} as Σ v_k v_kᵀ with rank-one
/// symmetric terms. Diagonal pivots clear whole rows; a zero diagonal with a
/// live off-diagonal pair is split through the three-term identity
/// (e_i+e_j)(e_i+e_j)ᵀ - e_i e_iᵀ - e_j e_jᵀ, with non-square coefficients
/// absorbed as sums of two squares. Reconstruction is asserted on every run.
pub fn symmetric_rank_one_decomposition(
    cub: &CubicalMult,
    ctx: &FieldCtx,
) -> Result<Vec<Vec<Elem>>> {
    let n = cub.n();
    for i in 0..n {
        for j in 0..n {
            if cub.at(i, j) != cub.at(j, i) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut m: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|j| cub.at(i, j)).collect())
        .collect();
    let mut vs: Vec<Vec<Elem>> = Vec::new();

    let push_scaled = |vs: &mut Vec<Vec<Elem>>, d: Elem, u: &[Elem]| {
        // d·uuᵀ as one or two square-scaled copies of u
        let (s, t) = ctx.two_squares(d);
        if !s.is_zero() {
            vs.push(u.iter().map(|&c| ctx.mul(s, c)).collect());
        }
        if !t.is_zero() {
            vs.push(u.iter().map(|&c| ctx.mul(t, c)).collect());
        }
    };

    loop {
        if m.iter().all(|row| row.iter().all(|c| c.is_zero())) {
            break;
        }
        if let Some(k) = (0..n).find(|&k| !m[k][k].is_zero()) {
            let d = m[k][k];
            let dinv = ctx.inv(d).expect("pivot nonzero");
            let u: Vec<Elem> = (0..n).map(|i| ctx.mul(dinv, m[i][k])).collect();
            for i in 0..n {
                for j in 0..n {
                    let sub = ctx.mul(d, ctx.mul(u[i], u[j]));
                    m[i][j] = ctx.sub(m[i][j], sub);
                }
            }
            push_scaled(&mut vs, d, &u);
        } else {
            let (i, j) = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero())
                .expect("nonzero matrix with zero diagonal has a live pair");
            let v = m[i][j];
            let mut eij = vec![ctx.zero(); n];
            eij[i] = ctx.one();
            eij[j] = ctx.one();
            let mut ei = vec![ctx.zero(); n];
            ei[i] = ctx.one();
            let mut ej = vec![ctx.zero(); n];
            ej[j] = ctx.one();
            push_scaled(&mut vs, v, &eij);
            push_scaled(&mut vs, ctx.neg(v), &ei);
            push_scaled(&mut vs, ctx.neg(v), &ej);
            m[i][j] = ctx.zero();
            m[j][i] = ctx.zero();
        }
    }

    // machine-verify the reconstruction
    let mut recon = vec![vec![ctx.zero(); n]; n];
    for v in &vs {
        for i in 0..n {
            for j in 0..n {
                recon[i][j] = ctx.add(recon[i][j], ctx.mul(v[i], v[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            assert_eq!(recon[i][j], cub.at(i, j), "rank-one reconstruction failed");
        }
    }
    Ok(vs)
}

/// Configuration (f, f̂) from a symmetric cubical array, via the rank-one
/// decomposition; r may exceed n, and short decompositions are padded with
/// zero maps up to r = 2.
pub fn symplectic_config(cub: &CubicalMult, ctx: &FieldCtx) -> Result<BelConfig> {
    let vs = symmetric_rank_one_decomposition(cub, ctx)?;
    let n = ctx.n();
    let mut f: Vec<LinPoly> = vs.into_iter().map(LinPoly::new).collect();
    while f.len() < 2 {
        f.push(LinPoly::zero(n));
    }
    let g = f.iter().map(|fk| fk.adjoint(ctx)).collect();
    BelConfig::new(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Aut;
    use crate::gtf::GtfParams;
    use crate::sample::Sampler;
    use crate::semifield::KnuthWord;

    fn ctx23() -> FieldCtx {
        FieldCtx::new(2, 1, 3).unwrap()
    }

    fn gf27() -> FieldCtx {
        FieldCtx::new(3, 1, 3).unwrap()
    }

    fn gtf27(ctx: &FieldCtx) -> GtfParams {
        let a = Aut::new(1, 3);
        let b = Aut::new(2, 3);
        let c = ctx
            .nonzero_elems()
            .find(|&c| GtfParams::new(c, a, b).valid(ctx))
            .unwrap();
        GtfParams::new(c, a, b)
    }

    #[test]
    fn field_configuration() {
        let ctx = ctx23();
        let b = BelConfig::field(&ctx);
        assert!(b.dims_ok(&ctx));
        assert!(b.is_bel(&ctx).unwrap());
        for x in ctx.elems() {
            for y in ctx.elems() {
                assert_eq!(b.mult(x, y, &ctx), ctx.mul(x, y));
            }
        }
        assert_eq!(b.to_cubical(&ctx), CubicalMult::field(&ctx));
    }

    #[test]
    fn degenerate_configurations() {
        let ctx = ctx23();
        let n = ctx.n();
        // f = (1,0), g = (0,1): multiplication identically zero
        let b = BelConfig::new(
            vec![LinPoly::identity(&ctx), LinPoly::zero(n)],
            vec![LinPoly::zero(n), LinPoly::identity(&ctx)],
        )
        .unwrap();
        assert!(b.dims_ok(&ctx));
        assert!(!b.is_bel(&ctx).unwrap());
        // f = (0,0): F not injective
        let bad = BelConfig::new(
            vec![LinPoly::zero(n), LinPoly::zero(n)],
            vec![LinPoly::identity(&ctx), LinPoly::zero(n)],
        )
        .unwrap();
        assert!(!bad.dims_ok(&ctx));
        assert_eq!(bad.is_bel(&ctx), Err(Error::DimsCheckFailed));
    }

    #[test]
    fn gtf_configuration_multiplies_like_gtf() {
        let ctx = gf27();
        let params = gtf27(&ctx);
        let b = BelConfig::gtf_config(&params, &ctx);
        assert!(b.is_bel(&ctx).unwrap());
        for x in ctx.elems() {
            for y in ctx.elems() {
                assert_eq!(b.mult(x, y, &ctx), params.raw_mult(x, y, &ctx));
            }
        }
        assert_eq!(b.to_cubical(&ctx), params.to_cubical(&ctx).unwrap());
    }

    #[test]
    fn cubical_expansion_matches_mult_exhaustively() {
        let ctx = ctx23();
        let mut s = Sampler::new(21);
        for r in [2usize, 3] {
            for _ in 0..10 {
                let b = BelConfig::new(
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                )
                .unwrap();
                let cub = b.to_cubical(&ctx);
                for x in ctx.elems() {
                    for y in ctx.elems() {
                        assert_eq!(cub.mult(x, y, &ctx), b.mult(x, y, &ctx));
                    }
                }
            }
        }
    }

    #[test]
    fn dims_ok_agrees_with_brute_force_counting() {
        let ctx = ctx23();
        let mut s = Sampler::new(29);
        for r in [2usize, 3] {
            for _ in 0..15 {
                let b = BelConfig::new(
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                )
                .unwrap();
                // injectivity of F by counting distinct images
                let images: std::collections::HashSet<Vec<Elem>> =
                    ctx.elems().map(|x| b.u_point(x, &ctx)).collect();
                let f_injective = images.len() as u64 == ctx.order();
                // surjectivity of G by enumerating all r-tuples
                let mut hit = std::collections::HashSet::new();
                let qn = ctx.order();
                for idx in 0..qn.pow(r as u32) {
                    let mut rest = idx;
                    let mut acc = ctx.zero();
                    for gi in b.g() {
                        let xi = Elem((rest % qn) as u32);
                        rest /= qn;
                        acc = ctx.add(acc, gi.evaluate(xi, &ctx));
                    }
                    hit.insert(acc);
                }
                let g_surjective = hit.len() as u64 == ctx.order();
                assert_eq!(b.dims_ok(&ctx), f_injective && g_surjective);
            }
        }
    }

    #[test]
    fn belprop_routes_agree_on_random_tuples() {
        let ctx = ctx23();
        let mut s = Sampler::new(33);
        let mut seen_true = 0;
        let mut seen_false = 0;
        for r in [2usize, 3] {
            let mut tries = 0;
            while (seen_true < 3 || seen_false < 3) && tries < 5000 {
                tries += 1;
                let b = BelConfig::new(
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                )
                .unwrap();
                if !b.dims_ok(&ctx) {
                    continue;
                }
                let report = belprop_routes(&b, &ctx).unwrap();
                assert!(report.all_agree(), "routes disagree: {report:?}");
                assert_eq!(report.verdict(), b.is_bel(&ctx).unwrap());
                if report.verdict() {
                    seen_true += 1;
                } else {
                    seen_false += 1;
                }
            }
        }
        assert!(seen_true >= 3 && seen_false >= 3);
    }

    #[test]
    fn spread_equals_cubical_route() {
        let ctx = ctx23();
        let mut s = Sampler::new(40);
        let mut found = 0;
        while found < 5 {
            let b = BelConfig::new(
                vec![s.linpoly(&ctx), s.linpoly(&ctx)],
                vec![s.linpoly(&ctx), s.linpoly(&ctx)],
            )
            .unwrap();
            if !b.dims_ok(&ctx) || !b.is_bel(&ctx).unwrap() {
                continue;
            }
            found += 1;
            let spread = b.bel_spread(&ctx).unwrap();
            assert_eq!(spread.len() as u64, ctx.order() + 1);
            assert!(spread.is_spread(&ctx));
            let dual_route = b
                .to_cubical(&ctx)
                .knuth(KnuthWord::D, &ctx)
                .unwrap()
                .spread_of(&ctx)
                .unwrap();
            assert!(spread.same_subspace_set(&dual_route));
        }
        // field: Desarguesian spread, equal to its own right-mult spread
        let fb = BelConfig::field(&ctx);
        let fs = fb.bel_spread(&ctx).unwrap();
        assert!(fs.same_subspace_set(&CubicalMult::field(&ctx).spread_of(&ctx).unwrap()));
    }

    #[test]
    fn find_and_reduce_dropped_coordinate() {
        let ctx = ctx23();
        let n = ctx.n();
        // g3 = 0: v = (0,0,1), reduction drops the third coordinate. Keep the
        // (g1, g2) subsystem free of its own spread elements so the kernel is
        // one-dimensional and the witness deterministic.
        let mut s = Sampler::new(55);
        loop {
            let f3 = vec![LinPoly::identity(&ctx), s.linpoly(&ctx), s.linpoly(&ctx)];
            let g1 = s.linpoly(&ctx);
            let g2 = s.linpoly(&ctx);
            let sub = BelConfig::new(
                vec![LinPoly::identity(&ctx), LinPoly::zero(n)],
                vec![g1.clone(), g2.clone()],
            )
            .unwrap();
            let g3 = vec![g1, g2, LinPoly::zero(n)];
            let b = BelConfig::new(f3, g3).unwrap();
            if !b.dims_ok(&ctx)
                || !sub.dims_ok(&ctx)
                || sub.find_spread_element_in_w(&ctx).unwrap().is_some()
            {
                continue;
            }
            let v = b.find_spread_element_in_w(&ctx).unwrap().unwrap();
            assert_eq!(v, vec![ctx.zero(), ctx.zero(), ctx.one()]);
            let red = b.reduce_r(&ctx).unwrap();
            assert_eq!(red.r(), 2);
            for x in ctx.elems() {
                for y in ctx.elems() {
                    assert_eq!(red.mult(x, y, &ctx), b.mult(x, y, &ctx));
                }
            }
            break;
        }
    }

    #[test]
    fn reduce_with_dependent_g_preserves_mult() {
        let ctx = ctx23();
        let mut s = Sampler::new(77);
        let mut done = 0;
        while done < 5 {
            let lambda = s.nonzero_elem(&ctx);
            let g2 = s.linpoly(&ctx);
            let g3 = g2.compose(&LinPoly::scalar(lambda, &ctx), &ctx);
            let b = BelConfig::new(
                vec![s.linpoly(&ctx), s.linpoly(&ctx), s.linpoly(&ctx)],
                vec![s.linpoly(&ctx), g2, g3],
            )
            .unwrap();
            if !b.dims_ok(&ctx) {
                continue;
            }
            done += 1;
            let v = b.find_spread_element_in_w(&ctx).unwrap();
            assert!(v.is_some(), "dependent g must yield a spread element");
            let red = b.reduce_r(&ctx).unwrap();
            assert_eq!(red.r(), 2);
            for x in ctx.elems() {
                for y in ctx.elems() {
                    assert_eq!(red.mult(x, y, &ctx), b.mult(x, y, &ctx));
                }
            }
        }
    }

    #[test]
    fn reduce_errors() {
        let ctx = ctx23();
        let b2 = BelConfig::field(&ctx);
        assert_eq!(b2.reduce_r(&ctx), Err(Error::ReductionTooSmall));
        // generic r = 3 tuple: ψ_g injective, nothing to reduce
        let mut s = Sampler::new(99);
        loop {
            let b = BelConfig::new(
                vec![s.linpoly(&ctx), s.linpoly(&ctx), s.linpoly(&ctx)],
                vec![s.linpoly(&ctx), s.linpoly(&ctx), s.linpoly(&ctx)],
            )
            .unwrap();
            if !b.dims_ok(&ctx) {
                continue;
            }
            if b.find_spread_element_in_w(&ctx).unwrap().is_none() {
                assert_eq!(b.reduce_r(&ctx), Err(Error::NotReducible));
                break;
            }
        }
    }

    #[test]
    fn perp_transpose_is_knuth_t() {
        let ctx = ctx23();
        let mut s = Sampler::new(60);
        for r in [2usize, 3] {
            let mut done = 0;
            while done < 5 {
                let b = BelConfig::new(
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                    (0..r).map(|_| s.linpoly(&ctx)).collect(),
                )
                .unwrap();
                if !b.dims_ok(&ctx) {
                    continue;
                }
                done += 1;
                let t = b.perp_transpose(&ctx).unwrap();
                assert_eq!(
                    t.to_cubical(&ctx),
                    b.to_cubical(&ctx).knuth_unchecked(KnuthWord::T, &ctx)
                );
                assert_eq!(t.perp_transpose(&ctx).unwrap(), b);
                if b.is_bel(&ctx).unwrap() {
                    assert!(t.is_bel(&ctx).unwrap());
                }
            }
        }
        let fb = BelConfig::field(&ctx);
        assert_eq!(fb.perp_transpose(&ctx).unwrap(), fb);
    }

    #[test]
    fn psi_image_is_dual_spread_set() {
        let ctx = ctx23();
        let mut s = Sampler::new(71);
        let mut done = 0;
        while done < 5 {
            let b = BelConfig::new(
                vec![s.linpoly(&ctx), s.linpoly(&ctx)],
                vec![s.linpoly(&ctx), s.linpoly(&ctx)],
            )
            .unwrap();
            if !b.dims_ok(&ctx) {
                continue;
            }
            done += 1;
            let psi = b.psi_image(&ctx).unwrap();
            let dual = b.to_cubical(&ctx).knuth_unchecked(KnuthWord::D, &ctx);
            for (x, map) in ctx.elems().zip(&psi) {
                assert_eq!(map, &dual.right_mult(x, &ctx));
            }
            if b.is_bel(&ctx).unwrap() {
                for (x, map) in ctx.elems().zip(&psi) {
                    if !x.is_zero() {
                        assert_eq!(map.rank(&ctx), ctx.n());
                    }
                }
            }
        }
        // field: all scalar multiplication maps; ψ_g(0) is the zero map
        let fb = BelConfig::field(&ctx);
        let psi = fb.psi_image(&ctx).unwrap();
        for (x, map) in ctx.elems().zip(&psi) {
            assert_eq!(map, &LinPoly::scalar(x, &ctx));
        }
    }

    #[test]
    fn canonical_configuration_reproduces_any_cubical() {
        let ctx = ctx23();
        let mut s = Sampler::new(81);
        for _ in 0..3 {
            let c = s.presemifield(&ctx);
            let b = BelConfig::canonical_from_cubical(&c, &ctx);
            assert_eq!(b.r(), ctx.n());
            assert_eq!(b.to_cubical(&ctx), c);
            assert!(b.dims_ok(&ctx));
            assert!(b.is_bel(&ctx).unwrap());
        }
    }

    #[test]
    fn symplectic_field_case() {
        let ctx = ctx23();
        let f = CubicalMult::field(&ctx);
        let b = symplectic_config(&f, &ctx).unwrap();
        assert_eq!(b.r(), 2); // one rank-one term, padded
        for x in ctx.elems() {
            for y in ctx.elems() {
                assert_eq!(b.mult(x, y, &ctx), ctx.mul(x, y));
            }
        }
    }

    #[test]
    fn symplectic_decomposition_random_symmetric() {
        let ctx = gf27();
        let mut s = Sampler::new(123);
        for _ in 0..10 {
            let c = s.symmetric_cubical(&ctx);
            let vs = symmetric_rank_one_decomposition(&c, &ctx).unwrap();
            // reconstruction is asserted inside; also check the config shape
            let b = symplectic_config(&c, &ctx).unwrap();
            assert!(b.r() >= vs.len().max(2));
            for (fk, gk) in b.f().iter().zip(b.g()) {
                assert_eq!(&fk.adjoint(&ctx), gk);
            }
            // the configuration's array is the td-transform of the input
            assert_eq!(b.to_cubical(&ctx), c.knuth_unchecked(KnuthWord::Td, &ctx));
        }
        let asym = {
            let mut c = CubicalMult::new(&ctx, vec![ctx.zero(); 9]).unwrap();
            c.set(0, 1, ctx.one());
            c
        };
        assert_eq!(
            symmetric_rank_one_decomposition(&asym, &ctx),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn symplectic_alternating_char2_witness() {
        let ctx = FieldCtx::new(2, 1, 2).unwrap();
        let mut c = CubicalMult::new(&ctx, vec![ctx.zero(); 4]).unwrap();
        c.set(0, 1, ctx.one());
        c.set(1, 0, ctx.one());
        let vs = symmetric_rank_one_decomposition(&c, &ctx).unwrap();
        assert_eq!(vs.len(), 3);
        let b = symplectic_config(&c, &ctx).unwrap();
        assert_eq!(b.to_cubical(&ctx), c.knuth_unchecked(KnuthWord::Td, &ctx));
    }
}
