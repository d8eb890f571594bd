//! Line-oriented text serialization for every object the CLI exchanges.
//!
//! All formats start with an explicit header naming the field, and elements
//! serialize as decimal integers under the tower encoding, so fixtures diff
//! cleanly and re-parse without out-of-band context:
//!
//! ```text
//! gf p=<p> e=<e> n=<n>
//! semifield q=<q> n=<n>      followed by n rows of n comma-separated elements
//! bel q=<q> n=<n> r=<r>      followed by r f-lines and r g-lines
//! rank2 q=<q> n=<n>          followed by the a-line and the b-line
//! gtf q=<q> n=<n> c=<enc> a=<a> b=<b>
//! stab kind=<plain|swap> k=<enc> m=<enc> gamma=<g> delta=<d>
//! isotopism q=<q> n=<n>      followed by the A, B, C lines
//! ```
//!
//! Linearized polynomials use the bracket form `[c0,c1,...,c_{n-1}]`.

use crate::bel::BelConfig;
use crate::gf::{Aut, Elem, FieldCtx};
use crate::gtf::GtfParams;
use crate::isotopy::Isotopism;
use crate::linpoly::LinPoly;
use crate::rank2::{Rank2Pair, StabElement, StabKind};
use crate::semifield::CubicalMult;
use crate::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn write_elem(x: Elem, ctx: &FieldCtx) -> String {
    ctx.encode(x).to_string()
}

pub fn parse_elem(s: &str, ctx: &FieldCtx) -> Result<Elem> {
    let v: u64 = s
        .trim()
        .parse()
        .map_err(|_| perr(format!("malformed element encoding {s:?}")))?;
    ctx.decode(v)
}

pub fn write_linpoly(f: &LinPoly, ctx: &FieldCtx) -> String {
    let inner: Vec<String> = f.coeffs().iter().map(|&c| write_elem(c, ctx)).collect();
    format!("[{}]", inner.join(","))
}

pub fn parse_linpoly(s: &str, ctx: &FieldCtx) -> Result<LinPoly> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| perr(format!("expected [c0,...,c_{{n-1}}], got {s:?}")))?;
    let coeffs: Result<Vec<Elem>> = inner.split(',').map(|t| parse_elem(t, ctx)).collect();
    let coeffs = coeffs?;
    if coeffs.len() != ctx.n() {
        return Err(perr(format!(
            "expected {} coefficients, got {}",
            ctx.n(),
            coeffs.len()
        )));
    }
    Ok(LinPoly::new(coeffs))
}

/// Split a header line into its tag and key=value fields.
fn header_fields<'a>(line: &'a str, tag: &str) -> Result<Vec<(&'a str, &'a str)>> {
    let mut parts = line.split_whitespace();
    let first = parts.next().ok_or_else(|| perr("empty header line"))?;
    if first != tag {
        return Err(perr(format!("expected header {tag:?}, got {first:?}")));
    }
    parts
        .map(|kv| {
            kv.split_once('=')
                .ok_or_else(|| perr(format!("malformed field {kv:?}")))
        })
        .collect()
}

fn get_field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| perr(format!("missing field {key}=")))
}

fn get_u64(fields: &[(&str, &str)], key: &str) -> Result<u64> {
    get_field(fields, key)?
        .parse()
        .map_err(|_| perr(format!("field {key} is not an integer")))
}

pub fn write_gf_header(ctx: &FieldCtx) -> String {
    format!("gf p={} e={} n={}", ctx.p(), ctx.e(), ctx.n())
}

pub fn parse_gf_header(line: &str) -> Result<FieldCtx> {
    let fields = header_fields(line, "gf")?;
    FieldCtx::new(
        get_u64(&fields, "p")?,
        get_u64(&fields, "e")? as usize,
        get_u64(&fields, "n")? as usize,
    )
}

fn ctx_from_qn(fields: &[(&str, &str)]) -> Result<FieldCtx> {
    FieldCtx::from_q(get_u64(fields, "q")?, get_u64(fields, "n")? as usize)
}

pub fn write_cubical(c: &CubicalMult, ctx: &FieldCtx) -> String {
    let mut out = format!("semifield q={} n={}\n", ctx.q(), ctx.n());
    for i in 0..c.n() {
        let row: Vec<String> = (0..c.n()).map(|j| write_elem(c.at(i, j), ctx)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_cubical(text: &str) -> Result<(FieldCtx, CubicalMult)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| perr("empty semifield file"))?;
    let fields = header_fields(header, "semifield")?;
    let ctx = ctx_from_qn(&fields)?;
    let n = ctx.n();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| perr(format!("missing row {i} of the cubical array")))?;
        let row: Result<Vec<Elem>> = line.split(',').map(|t| parse_elem(t, &ctx)).collect();
        let row = row?;
        if row.len() != n {
            return Err(perr(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        entries.extend(row);
    }
    let c = CubicalMult::new(&ctx, entries)?;
    Ok((ctx, c))
}

pub fn write_bel(b: &BelConfig, ctx: &FieldCtx) -> String {
    let mut out = format!("bel q={} n={} r={}\n", ctx.q(), ctx.n(), b.r());
    for f in b.f() {
        out.push_str(&write_linpoly(f, ctx));
        out.push('\n');
    }
    for g in b.g() {
        out.push_str(&write_linpoly(g, ctx));
        out.push('\n');
    }
    out
}

pub fn parse_bel(text: &str) -> Result<(FieldCtx, BelConfig)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| perr("empty bel file"))?;
    let fields = header_fields(header, "bel")?;
    let ctx = ctx_from_qn(&fields)?;
    let r = get_u64(&fields, "r")? as usize;
    let mut polys = Vec::with_capacity(2 * r);
    for i in 0..2 * r {
        let line = lines
            .next()
            .ok_or_else(|| perr(format!("missing tuple line {i} (need {})", 2 * r)))?;
        polys.push(parse_linpoly(line, &ctx)?);
    }
    let g = polys.split_off(r);
    let b = BelConfig::new(polys, g)?;
    Ok((ctx, b))
}

pub fn write_rank2(p: &Rank2Pair, ctx: &FieldCtx) -> String {
    format!(
        "rank2 q={} n={}\n{}\n{}\n",
        ctx.q(),
        ctx.n(),
        write_linpoly(&p.a, ctx),
        write_linpoly(&p.b, ctx)
    )
}

pub fn parse_rank2(text: &str) -> Result<(FieldCtx, Rank2Pair)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| perr("empty rank2 file"))?;
    let fields = header_fields(header, "rank2")?;
    let ctx = ctx_from_qn(&fields)?;
    let a = parse_linpoly(lines.next().ok_or_else(|| perr("missing a-line"))?, &ctx)?;
    let b = parse_linpoly(lines.next().ok_or_else(|| perr("missing b-line"))?, &ctx)?;
    Ok((ctx, Rank2Pair::new(a, b)))
}

pub fn write_gtf(p: &GtfParams, ctx: &FieldCtx) -> String {
    format!(
        "gtf q={} n={} c={} a={} b={}",
        ctx.q(),
        ctx.n(),
        write_elem(p.c, ctx),
        p.a.index(),
        p.b.index()
    )
}

pub fn parse_gtf(text: &str) -> Result<(FieldCtx, GtfParams)> {
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| perr("empty gtf line"))?;
    let fields = header_fields(line, "gtf")?;
    let ctx = ctx_from_qn(&fields)?;
    let c = ctx.decode(get_u64(&fields, "c")?)?;
    let a = Aut::new(get_u64(&fields, "a")? as i64, ctx.n());
    let b = Aut::new(get_u64(&fields, "b")? as i64, ctx.n());
    Ok((ctx, GtfParams::new(c, a, b)))
}

pub fn write_stab(s: &StabElement, ctx: &FieldCtx) -> String {
    format!(
        "stab kind={} k={} m={} gamma={} delta={}",
        match s.kind {
            StabKind::Plain => "plain",
            StabKind::Swap => "swap",
        },
        write_elem(s.k, ctx),
        write_elem(s.m, ctx),
        s.gamma.index(),
        s.delta.index()
    )
}

pub fn parse_stab(text: &str, ctx: &FieldCtx) -> Result<StabElement> {
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| perr("empty stab line"))?;
    let fields = header_fields(line, "stab")?;
    let kind = match get_field(&fields, "kind")? {
        "plain" => StabKind::Plain,
        "swap" => StabKind::Swap,
        other => return Err(perr(format!("unknown stab kind {other:?}"))),
    };
    Ok(StabElement {
        kind,
        k: ctx.decode(get_u64(&fields, "k")?)?,
        m: ctx.decode(get_u64(&fields, "m")?)?,
        gamma: Aut::new(get_u64(&fields, "gamma")? as i64, ctx.n()),
        delta: Aut::new(get_u64(&fields, "delta")? as i64, ctx.n()),
    })
}

pub fn write_isotopism(iso: &Isotopism, ctx: &FieldCtx) -> String {
    format!(
        "isotopism q={} n={}\n{}\n{}\n{}\n",
        ctx.q(),
        ctx.n(),
        write_linpoly(&iso.a, ctx),
        write_linpoly(&iso.b, ctx),
        write_linpoly(&iso.c, ctx)
    )
}

pub fn parse_isotopism(text: &str) -> Result<(FieldCtx, Isotopism)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| perr("empty isotopism file"))?;
    let fields = header_fields(header, "isotopism")?;
    let ctx = ctx_from_qn(&fields)?;
    let a = parse_linpoly(lines.next().ok_or_else(|| perr("missing A-line"))?, &ctx)?;
    let b = parse_linpoly(lines.next().ok_or_else(|| perr("missing B-line"))?, &ctx)?;
    let c = parse_linpoly(lines.next().ok_or_else(|| perr("missing C-line"))?, &ctx)?;
    Ok((ctx, Isotopism { a, b, c }))
}
