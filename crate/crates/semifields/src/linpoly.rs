//! q-linearized polynomials: the GF(q)-endomorphisms of GF(q^n).
//!
//! A [`LinPoly`] stores the unique coefficients (f_0, …, f_{n-1}) of
//! f(x) = Σ f_i x^{q^i}. Composition reduces modulo x^{q^n} - x, the adjoint
//! is taken with respect to the trace form tr(xy), and rank/inversion go
//! through the matrix of the map over GF(q).

use crate::gf::{Elem, FieldCtx};
use crate::mat::Mat;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinPoly {
    c: Vec<Elem>,
}

impl LinPoly {
    pub fn new(coeffs: Vec<Elem>) -> LinPoly {
        LinPoly { c: coeffs }
    }

    pub fn zero(n: usize) -> LinPoly {
        LinPoly {
            c: vec![Elem::default(); n],
        }
    }

    pub fn identity(ctx: &FieldCtx) -> LinPoly {
        Self::monomial(ctx.one(), 0, ctx)
    }

    /// The scalar multiplication map x ↦ c·x.
    pub fn scalar(c: Elem, ctx: &FieldCtx) -> LinPoly {
        Self::monomial(c, 0, ctx)
    }

    /// The map x ↦ c·x^{q^k}.
    pub fn monomial(c: Elem, k: usize, ctx: &FieldCtx) -> LinPoly {
        let mut f = Self::zero(ctx.n());
        f.c[k % ctx.n()] = c;
        f
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, x: Elem, ctx: &FieldCtx) -> Elem {
        let mut acc = ctx.zero();
        let mut t = x;
        for &ci in &self.c {
            acc = ctx.add(acc, ctx.mul(ci, t));
            t = ctx.frobenius(t, 1);
        }
        acc
    }

    pub fn add(&self, other: &LinPoly, ctx: &FieldCtx) -> LinPoly {
        LinPoly {
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(&a, &b)| ctx.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinPoly, ctx: &FieldCtx) -> LinPoly {
        LinPoly {
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(&a, &b)| ctx.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, ctx: &FieldCtx) -> LinPoly {
        LinPoly {
            c: self.c.iter().map(|&a| ctx.neg(a)).collect(),
        }
    }

    /// Post-multiplication by a scalar: x ↦ s·f(x).
    pub fn scale(&self, s: Elem, ctx: &FieldCtx) -> LinPoly {
        LinPoly {
            c: self.c.iter().map(|&a| ctx.mul(s, a)).collect(),
        }
    }

    /// Composition self ∘ g, reduced modulo x^{q^n} - x: the coefficient at
    /// index (i+j mod n) accumulates f_i · g_j^{q^i}.
    pub fn compose(&self, g: &LinPoly, ctx: &FieldCtx) -> LinPoly {
        let n = ctx.n();
        let mut out = LinPoly::zero(n);
        for (i, &fi) in self.c.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in g.c.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                let term = ctx.mul(fi, ctx.frobenius(gj, i));
                out.c[k] = ctx.add(out.c[k], term);
            }
        }
        out
    }

    /// Adjoint with respect to tr(xy): coefficients f̂_i = f_{n-i}^{q^i}.
    pub fn adjoint(&self, ctx: &FieldCtx) -> LinPoly {
        let n = ctx.n();
        let mut out = LinPoly::zero(n);
        for i in 0..n {
            let src = (n - i) % n;
            out.c[i] = ctx.frobenius(self.c[src], i);
        }
        out
    }

    /// Matrix of the map on GF(q)-coordinates in the power basis; entries
    /// lie in the base field.
    pub fn to_matrix(&self, ctx: &FieldCtx) -> Mat {
        let n = ctx.n();
        let basis = ctx.power_basis().to_vec();
        let mut m = Mat::zero(n, n);
        for (j, &bj) in basis.iter().enumerate() {
            let img = self.evaluate(bj, ctx);
            for (i, ci) in ctx.coords_q(img).into_iter().enumerate() {
                m.set(i, j, ci);
            }
        }
        m
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.to_matrix(ctx).rank(ctx)
    }

    pub fn is_invertible(&self, ctx: &FieldCtx) -> bool {
        self.rank(ctx) == ctx.n()
    }

    /// Compositional inverse, computed by inverting the matrix over GF(q)
    /// and converting back.
    pub fn comp_inverse(&self, ctx: &FieldCtx) -> Result<LinPoly> {
        let inv = self.to_matrix(ctx).inverse(ctx).ok_or(Error::Singular)?;
        Ok(LinPoly::from_matrix(&inv, ctx))
    }

    /// Recover the linearized polynomial acting as the given matrix on
    /// GF(q)-coordinates.
    pub fn from_matrix(m: &Mat, ctx: &FieldCtx) -> LinPoly {
        let n = ctx.n();
        let images: Vec<Elem> = (0..n)
            .map(|j| {
                let col: Vec<Elem> = (0..n).map(|i| m.at(i, j)).collect();
                ctx.from_coords_q(&col)
            })
            .collect();
        Self::interpolate_on_basis(&images, ctx)
    }

    /// Interpolate the unique linearized polynomial with the given images on
    /// the power basis (the map being interpolated must be GF(q)-linear).
    pub fn from_map(f: impl Fn(Elem) -> Elem, ctx: &FieldCtx) -> LinPoly {
        let images: Vec<Elem> = ctx.power_basis().iter().map(|&b| f(b)).collect();
        Self::interpolate_on_basis(&images, ctx)
    }

    fn interpolate_on_basis(images: &[Elem], ctx: &FieldCtx) -> LinPoly {
        let n = ctx.n();
        let basis = ctx.power_basis().to_vec();
        // Moore system: Σ_i c_i (z^j)^{q^i} = images[j]
        let moore = Mat::from_fn(n, n, |j, i| ctx.frobenius(basis[j], i));
        let sol = moore
            .solve(images, ctx)
            .expect("Moore matrix of a basis is invertible");
        LinPoly::new(sol)
    }

    /// Kernel of the map as explicit field elements, in deterministic order.
    pub fn kernel(&self, ctx: &FieldCtx) -> Vec<Elem> {
        self.to_matrix(ctx)
            .kernel_basis(ctx)
            .into_iter()
            .map(|v| ctx.from_coords_q(&v))
            .collect()
    }
}
