//! Serialization round-trips, property-tested on random objects across a
//! few field towers (including one with e > 1, where the tower encoding
//! differs from the raw representation).

use proptest::prelude::*;
use semifields::gf::{Aut, FieldCtx};
use semifields::gtf::GtfParams;
use semifields::io;
use semifields::isotopy::Isotopism;
use semifields::rank2::{Rank2Pair, StabElement, StabKind};
use semifields::sample::Sampler;

fn ctx_for(choice: u8) -> FieldCtx {
    match choice % 4 {
        0 => FieldCtx::new(2, 1, 3).unwrap(),
        1 => FieldCtx::new(3, 1, 2).unwrap(),
        2 => FieldCtx::new(2, 2, 2).unwrap(),
        _ => FieldCtx::new(3, 1, 3).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elem_roundtrip(choice in 0u8..4, seed in any::<u64>()) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let x = s.elem(&ctx);
        let text = io::write_elem(x, &ctx);
        prop_assert_eq!(io::parse_elem(&text, &ctx).unwrap(), x);
    }

    #[test]
    fn linpoly_roundtrip(choice in 0u8..4, seed in any::<u64>()) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let f = s.linpoly(&ctx);
        let text = io::write_linpoly(&f, &ctx);
        prop_assert_eq!(io::parse_linpoly(&text, &ctx).unwrap(), f);
    }

    #[test]
    fn cubical_roundtrip(choice in 0u8..4, seed in any::<u64>()) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let c = s.cubical(&ctx);
        let text = io::write_cubical(&c, &ctx);
        let (ctx2, back) = io::parse_cubical(&text).unwrap();
        prop_assert_eq!((ctx2.p(), ctx2.e(), ctx2.n()), (ctx.p(), ctx.e(), ctx.n()));
        // serialization is stable: writing again is byte-identical
        prop_assert_eq!(io::write_cubical(&back, &ctx2), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn bel_roundtrip(choice in 0u8..4, seed in any::<u64>(), r in 2usize..4) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let f = (0..r).map(|_| s.linpoly(&ctx)).collect();
        let g = (0..r).map(|_| s.linpoly(&ctx)).collect();
        let b = semifields::bel::BelConfig::new(f, g).unwrap();
        let text = io::write_bel(&b, &ctx);
        let (_, back) = io::parse_bel(&text).unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn rank2_roundtrip(choice in 0u8..4, seed in any::<u64>()) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let p = Rank2Pair::new(s.linpoly(&ctx), s.linpoly(&ctx));
        let text = io::write_rank2(&p, &ctx);
        let (_, back) = io::parse_rank2(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gtf_roundtrip(choice in 0u8..4, seed in any::<u64>(), a in 0i64..4, b in 0i64..4) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let p = GtfParams::new(s.elem(&ctx), Aut::new(a, ctx.n()), Aut::new(b, ctx.n()));
        let text = io::write_gtf(&p, &ctx);
        let (_, back) = io::parse_gtf(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn stab_roundtrip(choice in 0u8..4, seed in any::<u64>(), swap in any::<bool>()) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let el = StabElement {
            kind: if swap { StabKind::Swap } else { StabKind::Plain },
            k: s.elem(&ctx),
            m: s.elem(&ctx),
            gamma: Aut::new(seed as i64 % ctx.n() as i64, ctx.n()),
            delta: Aut::new((seed / 7) as i64 % ctx.n() as i64, ctx.n()),
        };
        let text = io::write_stab(&el, &ctx);
        prop_assert_eq!(io::parse_stab(&text, &ctx).unwrap(), el);
    }

    #[test]
    fn isotopism_roundtrip(choice in 0u8..4, seed in any::<u64>()) {
        let ctx = ctx_for(choice);
        let mut s = Sampler::new(seed);
        let iso = Isotopism {
            a: s.linpoly(&ctx),
            b: s.linpoly(&ctx),
            c: s.linpoly(&ctx),
        };
        let text = io::write_isotopism(&iso, &ctx);
        let (_, back) = io::parse_isotopism(&text).unwrap();
        prop_assert_eq!(back, iso);
    }
}
