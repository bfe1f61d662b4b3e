use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use swclass::binom::binom_mod2;
use swclass::charclass::{
    ahat_class, equivariant_todd, mu_to_sw, segre, sw_to_mu, todd_class, ComplexBundleClass, RealBundleClass,
};
use swclass::gring::{CoeffRing, Element, RationalSeries, Ring};
use swclass::kdiv::{
    a_coeffs, ch_swk, divisibility_ledger, k_wall_difference, n_dmp_closed, n_dmp_residue, sym_series, KClass,
};
use swclass::steenrod::{binom_int, sq, SWLedger};
use swclass::wallcross::wall_difference;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a, b` odd, `c` even: signs matter.
fn mixed() -> Ring {
    Ring::free(CoeffRing::Rationals, &[("a", 1), ("b", 1), ("c", 2)], 6).unwrap()
}

fn element(r: &Ring, terms: &[(i64, u32, u32, u32)]) -> Element {
    terms.iter().fold(r.zero(), |acc, &(k, ea, eb, ec)| &acc + &r.monomial(vec![ea, eb, ec], q(k)))
}

fn terms() -> impl Strategy<Value = Vec<(i64, u32, u32, u32)>> {
    prop::collection::vec((-5i64..=5, 0u32..2, 0u32..2, 0u32..3), 0..5)
}

fn chern_ring() -> Ring {
    Ring::free(CoeffRing::Rationals, &[("g1", 2), ("g2", 2), ("h", 4), ("k", 6)], 6).unwrap()
}

/// Random Chern classes `c_1..c_rank` with coefficients in `-3..=3`.
fn bundle(r: &Ring, rank: i64, k: &[i64]) -> ComplexBundleClass {
    let monos = [
        vec!["g1", "g2"],
        vec!["g1^2", "g1*g2", "g2^2", "h"],
        vec!["g1^3", "g1^2*g2", "g1*h", "g2*h", "k"],
    ];
    let mut it = k.iter().cycle();
    let chern = monos
        .iter()
        .take(rank as usize)
        .map(|ms| {
            let s: Vec<String> = ms.iter().map(|m| format!("{}*{m}", it.next().unwrap())).collect();
            r.parse(&s.join("+")).unwrap()
        })
        .collect();
    ComplexBundleClass::new(r, rank, chern).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 11)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in terms(), y in terms(), z in terms()) {
        let r = mixed();
        let (x, y, z) = (element(&r, &x), element(&r, &y), element(&r, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &r.one(), x.clone());
    }

    #[test]
    fn graded_commutativity(x in terms(), y in terms()) {
        let r = mixed();
        let (x, y) = (element(&r, &x), element(&r, &y));
        // Split into odd and even parts: odd parts anticommute.
        let parity = |e: &Element, odd: bool| (0..=6).filter(|d| (d % 2 == 1) == odd).fold(r.zero(), |a, d| &a + &e.graded_part(d));
        let (xo, xe, yo, ye) = (parity(&x, true), parity(&x, false), parity(&y, true), parity(&y, false));
        prop_assert_eq!(&xe * &y, &y * &xe);
        prop_assert_eq!(&xo * &ye, &ye * &xo);
        prop_assert_eq!(&xo * &yo, -&(&yo * &xo));
    }

    #[test]
    fn series_invert_roundtrip(c in prop::collection::vec(-6i64..=6, 1..8), v in -2i64..=2, n in 4i64..10) {
        prop_assume!(c[0] != 0);
        let s = RationalSeries::rational("t", v, c.iter().map(|&k| q(k)).collect(), n);
        let inv = s.invert().unwrap();
        let prod = s.mul(&inv);
        for k in prod.min_power()..=prod.trunc() {
            prop_assert_eq!(prod.coeff(k), if k == 0 { BigRational::one() } else { BigRational::zero() });
        }
    }

    #[test]
    fn truncation_commutes_with_products(x in terms(), y in terms(), t in 0u32..6) {
        let r = mixed();
        let low = r.with_trunc(t).unwrap();
        let (x, y) = (element(&r, &x), element(&r, &y));
        prop_assert_eq!(low.convert(&(&x * &y)).unwrap(), &low.convert(&x).unwrap() * &low.convert(&y).unwrap());
    }

    #[test]
    fn mu_sw_roundtrip(k in coeffs(), rank in 1i64..=3, sw_k in coeffs()) {
        let r = chern_ring();
        let v = bundle(&r, rank, &k);
        let s = segre(&v).unwrap();
        let c = v.total_chern_list();
        let sw = vec![r.int(sw_k[0]), bundle(&r, 1, &sw_k[1..]).c(1), bundle(&r, 2, &sw_k[3..]).c(2)];
        let mu = sw_to_mu(&sw, &c).unwrap();
        let back = mu_to_sw(&mu, &s).unwrap();
        for (i, x) in sw.iter().enumerate() {
            prop_assert_eq!(&back[i], x);
        }
        for extra in &back[sw.len()..] {
            prop_assert!(extra.is_zero());
        }
    }

    #[test]
    fn todd_is_multiplicative(k1 in coeffs(), k2 in coeffs(), r1 in 1i64..=3, r2 in 1i64..=3) {
        let r = chern_ring();
        let (v, w) = (bundle(&r, r1, &k1), bundle(&r, r2, &k2));
        let sum = v.direct_sum(&w).unwrap();
        prop_assert_eq!(todd_class(&sum).unwrap(), &todd_class(&v).unwrap() * &todd_class(&w).unwrap());
    }

    #[test]
    fn ahat_is_multiplicative(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let r = Ring::free(CoeffRing::Rationals, &[("u", 4), ("v", 4)], 8).unwrap();
        let p1 = |x: i64, y: i64| r.parse(&format!("{x}*u+{y}*v")).unwrap();
        let e = RealBundleClass::new(4, vec![], vec![p1(a, b)], None).unwrap();
        let f = RealBundleClass::new(4, vec![], vec![p1(c, a)], None).unwrap();
        // p(E + F) = p(E) p(F) up to 2-torsion, which vanishes rationally.
        let total = &(&r.one() + &p1(a, b)) * &(&r.one() + &p1(c, a));
        let g = RealBundleClass::new(8, vec![], vec![total.graded_part(4), total.graded_part(8)], None).unwrap();
        prop_assert_eq!(ahat_class(&r, &g).unwrap(), &ahat_class(&r, &e).unwrap() * &ahat_class(&r, &f).unwrap());
    }

    #[test]
    fn log_powers_are_inverse(p in -6i64..=6, n in 1usize..10) {
        let prod = a_coeffs(p, n).unwrap().mul(&a_coeffs(-p, n).unwrap());
        for k in prod.min_power()..=prod.trunc() {
            prop_assert_eq!(prod.coeff(k), if k == 0 { BigRational::one() } else { BigRational::zero() });
        }
    }

    #[test]
    fn ndmp_routes_agree(d in 1i64..=14, m in 0i64..=14, p in 0i64..14) {
        prop_assume!(p < d);
        prop_assert_eq!(n_dmp_closed(d, m, p).unwrap(), n_dmp_residue(d, m, p).unwrap());
    }

    #[test]
    fn ledger_row_zero_is_ndmp(d in 1i64..=9, p in 0i64..9) {
        prop_assume!(p < d);
        let l = divisibility_ledger(d, p).unwrap();
        prop_assert!(l.certificate_holds());
        for (m, v) in l.delta_table[0].iter().enumerate() {
            prop_assert_eq!(v, &n_dmp_closed(d, m as i64, p).unwrap());
        }
    }

    #[test]
    fn sym_of_line_sums(k in prop::collection::vec(-2i64..=2, 3), n in 0usize..=4) {
        // W = L1 + L2 + L3 with c1(Li) = k_i g1; Sym^n W has Chern character
        // h_n(e^{x_1}, e^{x_2}, e^{x_3}).
        let r = chern_ring();
        let g1 = r.gen("g1").unwrap();
        let lines: Vec<Element> = k.iter().map(|&ki| g1.scale_int(ki).exp().unwrap()).collect();
        let w = KClass::new(lines.iter().fold(r.zero(), |a, b| &a + b)).unwrap();
        let mut h = r.zero();
        for i in 0..=n {
            for j in 0..=n - i {
                let l = n - i - j;
                h = &h + &(&(&lines[0].pow(i as u32) * &lines[1].pow(j as u32)) * &lines[2].pow(l as u32));
            }
        }
        prop_assert_eq!(&sym_series(&w, n).unwrap()[n].ch, &h);
    }

    #[test]
    fn k_wall_matches_ch_swk(k in coeffs(), rank in 1i64..=3, o in -3i64..=3, m in -6i64..=6, kap in -2i64..=2) {
        let r = chern_ring();
        let dbundle = bundle(&r, rank, &k);
        let obs = r.parse(&format!("{o} + g1 - g2")).unwrap();
        let kappa = r.parse(&format!("{kap}*g1")).unwrap();
        let ahat = r.parse("1 - 1/24*h").unwrap();
        let s = segre(&dbundle).unwrap();
        let nmax = rank + 3;
        let hplus = RealBundleClass::new(1, vec![], vec![], None).unwrap();
        let mut ledger = SWLedger::new(&r, rank, 1, s.clone(), BTreeMap::new(), hplus).unwrap();
        ledger.sw = (0..=nmax).map(|n| (n, wall_difference(n, rank, &obs, &s).unwrap())).collect();
        let td = equivariant_todd(&dbundle, nmax as usize).unwrap();
        prop_assert_eq!(
            ch_swk(&ledger, &kappa, &ahat, &td, m).unwrap(),
            k_wall_difference(m, &dbundle, &obs, &kappa, &ahat).unwrap()
        );
    }

    #[test]
    fn sq_trivial_bundles(d in -3i64..=6, m in 0i64..=4, j in 0u32..=3) {
        // Trivial D and H^+: only the l = j, k = 0 term survives.
        let b_plus = 2 * d + 15;
        let e = 2 * d - b_plus - 1;
        let gens: Vec<(String, u32)> = (0..=3).map(|k| (format!("S{k}"), (2 * (m + k) - e) as u32)).collect();
        let g: Vec<(&str, u32)> = gens.iter().map(|(n, dd)| (n.as_str(), *dd)).collect();
        let r = Ring::free(CoeffRing::Mod2, &g, 64).unwrap();
        let sw = (0..=3).map(|k| (m + k, r.gen_at(k as usize))).collect();
        let hplus = RealBundleClass::new(b_plus, vec![], vec![], None).unwrap();
        let ledger = SWLedger::new(&r, d, b_plus, vec![], sw, hplus).unwrap();
        let want = if binom_mod2(d - 1 - m + i64::from(j), i64::from(j)) { r.gen_at(j as usize) } else { r.zero() };
        prop_assert_eq!(sq(&ledger, 2 * j, m).unwrap(), want);
        prop_assert!(sq(&ledger, 2 * j + 1, m).unwrap().is_zero());
    }

    #[test]
    fn sq_vanishes_above_degree_on_wall_ledgers(d in 1i64..=6, b_plus in 2i64..=7, i in 0u32..=8, m in 0i64..=8) {
        // Trivialised H^+ and trivial D: the jump sits in SW_{d-1} alone.
        let deg = (b_plus - 1) as u32;
        let r = Ring::free(CoeffRing::Mod2, &[("o", deg)], 64).unwrap();
        let obs = r.gen("o").unwrap();
        let sw = (0..=m + 8).map(|n| (n, wall_difference(n, d, &obs, &[]).unwrap())).collect();
        let hplus = RealBundleClass::new(b_plus, vec![], vec![], None).unwrap();
        let ledger = SWLedger::new(&r, d, b_plus, vec![], sw, hplus).unwrap();
        prop_assume!(i64::from(i) > ledger.sw_degree(m));
        prop_assert!(sq(&ledger, i, m).unwrap().is_zero());
    }
}

#[test]
fn binom_mod2_matches_integers() {
    for n in -40..=40 {
        for k in 0..=40 {
            let exact = binom_int(n, k).unwrap();
            assert_eq!(binom_mod2(n, k), (exact % 2u8) != BigInt::zero(), "binom({n},{k})");
        }
    }
}
