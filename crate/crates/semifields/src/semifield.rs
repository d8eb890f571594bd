//! Presemifields as cubical arrays, spreads, nuclei, and the Knuth orbit.
//!
//! A multiplication on GF(q^n) that is biadditive over GF(q) is pinned down
//! by the unique array (c_ij) with S(x,y) = Σ c_ij x^{q^i} y^{q^j}. The six
//! Knuth-orbit transforms act by closed-form index shuffles on that array;
//! the transpose row is characterized by S^t(x,y) = R̂_y(x), which the test
//! suite checks against the adjoint oracle.

use crate::gf::{Elem, FieldCtx};
use crate::linpoly::LinPoly;
use crate::mat::Mat;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// The six words of the S₃ action generated by transpose and dual.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum KnuthWord {
    Id,
    T,
    D,
    Td,
    Dt,
    Dtd,
}

impl KnuthWord {
    pub const ALL: [KnuthWord; 6] = [
        KnuthWord::Id,
        KnuthWord::T,
        KnuthWord::D,
        KnuthWord::Td,
        KnuthWord::Dt,
        KnuthWord::Dtd,
    ];

    pub fn parse(s: &str) -> Option<KnuthWord> {
        match s {
            "id" => Some(KnuthWord::Id),
            "t" => Some(KnuthWord::T),
            "d" => Some(KnuthWord::D),
            "td" => Some(KnuthWord::Td),
            "dt" => Some(KnuthWord::Dt),
            "dtd" | "tdt" => Some(KnuthWord::Dtd),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KnuthWord::Id => "id",
            KnuthWord::T => "t",
            KnuthWord::D => "d",
            KnuthWord::Td => "td",
            KnuthWord::Dt => "dt",
            KnuthWord::Dtd => "dtd",
        }
    }
}

impl fmt::Display for KnuthWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Mathematical mod into [0, n).
#[inline]
fn midx(x: isize, n: usize) -> usize {
    x.rem_euclid(n as isize) as usize
}

/// A presemifield multiplication as the n×n cubical array c_ij.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicalMult {
    n: usize,
    c: Vec<Elem>,
}

impl CubicalMult {
    pub fn new(ctx: &FieldCtx, entries: Vec<Elem>) -> Result<CubicalMult> {
        let n = ctx.n();
        if n < 2 {
            return Err(Error::InvalidArgument(
                "cubical arrays require n >= 2".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(CubicalMult { n, c: entries })
    }

    /// The finite field itself: c_00 = 1, everything else zero.
    pub fn field(ctx: &FieldCtx) -> CubicalMult {
        let n = ctx.n();
        let mut c = vec![ctx.zero(); n * n];
        c[0] = ctx.one();
        CubicalMult { n, c }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Elem {
        self.c[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.c[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.c
    }

    /// S(x,y) = Σ c_ij x^{q^i} y^{q^j}.
    pub fn mult(&self, x: Elem, y: Elem, ctx: &FieldCtx) -> Elem {
        let n = self.n;
        let mut acc = ctx.zero();
        let mut xi = x;
        for i in 0..n {
            let mut yj = y;
            for j in 0..n {
                let cij = self.at(i, j);
                if !cij.is_zero() {
                    acc = ctx.add(acc, ctx.mul(cij, ctx.mul(xi, yj)));
                }
                yj = ctx.frobenius(yj, 1);
            }
            xi = ctx.frobenius(xi, 1);
        }
        acc
    }

    /// R_y with coefficient vector (r_0(y), …, r_{n-1}(y)), r_i(y) = Σ_j c_ij y^{q^j}.
    pub fn right_mult(&self, y: Elem, ctx: &FieldCtx) -> LinPoly {
        let n = self.n;
        let mut coeffs = vec![ctx.zero(); n];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let mut yj = y;
            for j in 0..n {
                *slot = ctx.add(*slot, ctx.mul(self.at(i, j), yj));
                yj = ctx.frobenius(yj, 1);
            }
        }
        LinPoly::new(coeffs)
    }

    /// L_x with coefficient vector (l_0(x), …, l_{n-1}(x)), l_j(x) = Σ_i c_ij x^{q^i}.
    pub fn left_mult(&self, x: Elem, ctx: &FieldCtx) -> LinPoly {
        let n = self.n;
        let mut coeffs = vec![ctx.zero(); n];
        let mut xi = x;
        for i in 0..n {
            for (j, slot) in coeffs.iter_mut().enumerate() {
                *slot = ctx.add(*slot, ctx.mul(self.at(i, j), xi));
            }
            xi = ctx.frobenius(xi, 1);
        }
        LinPoly::new(coeffs)
    }

    /// True iff every nonzero right multiplication is nonsingular.
    pub fn is_presemifield(&self, ctx: &FieldCtx) -> bool {
        ctx.nonzero_elems()
            .all(|y| self.right_mult(y, ctx).rank(ctx) == self.n)
    }

    /// Apply a Knuth word via the closed-form coefficient tables.
    pub fn knuth(&self, word: KnuthWord, ctx: &FieldCtx) -> Result<CubicalMult> {
        if !self.is_presemifield(ctx) {
            return Err(Error::NotPresemifield);
        }
        Ok(self.knuth_unchecked(word, ctx))
    }

    pub(crate) fn knuth_unchecked(&self, word: KnuthWord, ctx: &FieldCtx) -> CubicalMult {
        let n = self.n;
        let mut out = CubicalMult {
            n,
            c: vec![ctx.zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let (ii, jj) = (i as isize, j as isize);
                let v = match word {
                    KnuthWord::Id => self.at(i, j),
                    KnuthWord::T => ctx.frobenius(self.at(midx(-ii, n), midx(jj - ii, n)), i),
                    KnuthWord::D => self.at(j, i),
                    KnuthWord::Td => ctx.frobenius(self.at(midx(-jj, n), midx(ii - jj, n)), j),
                    KnuthWord::Dt => ctx.frobenius(self.at(midx(jj - ii, n), midx(-ii, n)), i),
                    KnuthWord::Dtd => ctx.frobenius(self.at(midx(ii - jj, n), midx(-jj, n)), j),
                };
                out.set(i, j, v);
            }
        }
        out
    }

    /// Interpolate the unique cubical array of a GF(q)-bilinear map.
    pub fn from_bilinear(f: impl Fn(Elem, Elem) -> Elem, ctx: &FieldCtx) -> CubicalMult {
        let n = ctx.n();
        let basis = ctx.power_basis().to_vec();
        let moore = Mat::from_fn(n, n, |u, i| ctx.frobenius(basis[u], i));
        let minv = moore.inverse(ctx).expect("Moore matrix is invertible");
        let vals = Mat::from_fn(n, n, |u, v| f(basis[u], basis[v]));
        // S = V C Vᵀ on basis pairs, so C = V⁻¹ S V⁻ᵀ
        let minv_t = Mat::from_fn(n, n, |r, c| minv.at(c, r));
        let cmat = minv.mul(&vals, ctx).mul(&minv_t, ctx);
        CubicalMult {
            n,
            c: (0..n * n).map(|k| cmat.at(k / n, k % n)).collect(),
        }
    }

    /// The canonical principal isotope with identity element mult(e, e):
    /// x ∗ y = S(R_e⁻¹(x), L_e⁻¹(y)).
    pub fn unitalize(&self, e: Elem, ctx: &FieldCtx) -> Result<CubicalMult> {
        if e.is_zero() {
            return Err(Error::InvalidArgument(
                "unitalization basepoint must be nonzero".into(),
            ));
        }
        if !self.is_presemifield(ctx) {
            return Err(Error::NotPresemifield);
        }
        let re_inv = self.right_mult(e, ctx).comp_inverse(ctx)?;
        let le_inv = self.left_mult(e, ctx).comp_inverse(ctx)?;
        Ok(Self::from_bilinear(
            |x, y| self.mult(re_inv.evaluate(x, ctx), le_inv.evaluate(y, ctx), ctx),
            ctx,
        ))
    }

    /// Two-sided identity, if the multiplication has one.
    pub fn identity_elem(&self, ctx: &FieldCtx) -> Option<Elem> {
        let basis = ctx.power_basis().to_vec();
        ctx.nonzero_elems().find(|&u| {
            basis
                .iter()
                .all(|&b| self.mult(u, b, ctx) == b && self.mult(b, u, ctx) == b)
        })
    }

    /// Orders of the left/middle/right nuclei and the centre of the
    /// canonical unitalization.
    pub fn nuclei(&self, ctx: &FieldCtx) -> Result<Nuclei> {
        if !self.is_presemifield(ctx) {
            return Err(Error::NotPresemifield);
        }
        let uni = if self.identity_elem(ctx).is_some() {
            self.clone()
        } else {
            self.unitalize(ctx.one(), ctx)?
        };
        let basis = ctx.power_basis().to_vec();
        let pairs: Vec<(Elem, Elem)> = basis
            .iter()
            .flat_map(|&u| basis.iter().map(move |&v| (u, v)))
            .collect();

        // associativity is linear in the two non-quantified slots, so basis
        // pairs suffice for each membership test
        let mut left = 0u64;
        let mut middle = 0u64;
        let mut right = 0u64;
        let mut in_all = Vec::new();
        for x in ctx.elems() {
            let l = pairs.iter().all(|&(y, z)| assoc_holds(&uni, x, y, z, ctx));
            let m = pairs.iter().all(|&(y, z)| assoc_holds(&uni, y, x, z, ctx));
            let r = pairs.iter().all(|&(y, z)| assoc_holds(&uni, y, z, x, ctx));
            left += l as u64;
            middle += m as u64;
            right += r as u64;
            if l && m && r {
                in_all.push(x);
            }
        }
        let centre = in_all
            .iter()
            .filter(|&&x| {
                basis
                    .iter()
                    .all(|&b| uni.mult(x, b, ctx) == uni.mult(b, x, ctx))
            })
            .count() as u64;
        Ok(Nuclei {
            left,
            middle,
            right,
            centre,
        })
    }

    /// The semifield spread {A_y} ∪ {A_∞} of V(2n, q).
    pub fn spread_of(&self, ctx: &FieldCtx) -> Result<SemifieldSpread> {
        if !self.is_presemifield(ctx) {
            return Err(Error::NotPresemifield);
        }
        let members = ctx
            .elems()
            .map(|y| SpreadMember::Graph(self.right_mult(y, ctx)))
            .chain(std::iter::once(SpreadMember::Infinity))
            .collect();
        Ok(SemifieldSpread { members })
    }
}

fn assoc_holds(uni: &CubicalMult, x: Elem, y: Elem, z: Elem, ctx: &FieldCtx) -> bool {
    uni.mult(uni.mult(x, y, ctx), z, ctx) == uni.mult(x, uni.mult(y, z, ctx), ctx)
}

/// Nucleus and centre orders of a semifield.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Nuclei {
    pub left: u64,
    pub middle: u64,
    pub right: u64,
    pub centre: u64,
}

/// One member of a spread of V(2n, q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpreadMember {
    Graph(LinPoly),
    Infinity,
}

/// A spread of V(2n, q): q^n graphs of linearized polynomials plus A_∞.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemifieldSpread {
    pub members: Vec<SpreadMember>,
}

impl SemifieldSpread {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// ε-dual: A_y ↦ graph of the adjoint map, A_∞ fixed.
    pub fn dual_epsilon(&self, ctx: &FieldCtx) -> SemifieldSpread {
        SemifieldSpread {
            members: self
                .members
                .iter()
                .map(|m| match m {
                    SpreadMember::Graph(f) => SpreadMember::Graph(f.adjoint(ctx)),
                    SpreadMember::Infinity => SpreadMember::Infinity,
                })
                .collect(),
        }
    }

    /// Equality as sets of subspaces (a graph determines its map uniquely).
    pub fn same_subspace_set(&self, other: &SemifieldSpread) -> bool {
        fn key(s: &SemifieldSpread) -> Vec<Option<Vec<Elem>>> {
            let mut ks: Vec<Option<Vec<Elem>>> = s
                .members
                .iter()
                .map(|m| match m {
                    SpreadMember::Graph(f) => Some(f.coeffs().to_vec()),
                    SpreadMember::Infinity => None,
                })
                .collect();
            ks.sort();
            ks
        }
        key(self) == key(other)
    }

    /// Exhaustive check that the members cover each nonzero vector of
    /// V(2n, q) exactly once.
    pub fn is_spread(&self, ctx: &FieldCtx) -> bool {
        let mut seen: HashMap<(Elem, Elem), u32> = HashMap::new();
        for m in &self.members {
            match m {
                SpreadMember::Graph(f) => {
                    for x in ctx.nonzero_elems() {
                        *seen.entry((x, f.evaluate(x, ctx))).or_insert(0) += 1;
                    }
                }
                SpreadMember::Infinity => {
                    for y in ctx.nonzero_elems() {
                        *seen.entry((ctx.zero(), y)).or_insert(0) += 1;
                    }
                }
            }
        }
        let total = ctx.order() * ctx.order() - 1;
        seen.len() as u64 == total && seen.values().all(|&c| c == 1)
    }
}

/// The alternating form b_ε((a,b),(c,d)) = tr(ad - bc) on V(2n, q).
pub fn b_epsilon(u: (Elem, Elem), v: (Elem, Elem), ctx: &FieldCtx) -> Elem {
    ctx.trace(ctx.sub(ctx.mul(u.0, v.1), ctx.mul(u.1, v.0)))
}
