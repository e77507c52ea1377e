use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use prop_hecke::affine_weyl::{AffineSystem, WElem};
use prop_hecke::bernstein::Bernstein;
use prop_hecke::extended_group::TElem;
use prop_hecke::laurent::Laurent;
use prop_hecke::root_datum::{cw_add, cw_neg, Cw, Facet, RootDatum, Sign, MAX_RANK};
use prop_hecke::verify::{run_suite, Format, SuiteConfig};

const DATA: &[(&str, u32)] = &[("SL2", 3), ("GL2", 4), ("PGL2", 5), ("SL3", 3), ("B2", 3), ("GL3", 3)];

fn algebra(i: usize) -> &'static Bernstein {
    static CELLS: OnceLock<Vec<OnceLock<Bernstein>>> = OnceLock::new();
    let cells = CELLS.get_or_init(|| DATA.iter().map(|_| OnceLock::new()).collect());
    cells[i].get_or_init(|| {
        let (label, q) = DATA[i];
        Bernstein::for_datum(Arc::new(RootDatum::build(label, None, q).unwrap()))
    })
}

fn rd_arc(i: usize) -> Arc<RootDatum> {
    algebra(i).sys().datum.clone()
}

fn coweight(b: &Bernstein, raw: [i32; MAX_RANK]) -> Cw {
    let dim = b.rd().dim;
    std::array::from_fn(|k| if k < dim { raw[k] } else { 0 })
}

fn element(b: &Bernstein, u: usize, raw: [i32; MAX_RANK], t: [u16; MAX_RANK]) -> TElem {
    let g = b.g();
    let u = (u % b.rd().weyl.len()) as u16;
    let lam = coweight(b, raw);
    let t: [u16; MAX_RANK] = std::array::from_fn(|k| if k < b.rd().dim { t[k] % g.m } else { 0 });
    g.mul(&TElem::torus(t), &TElem::lift(&WElem { u, lam }))
}

fn raw_cw(bound: i32) -> impl Strategy<Value = [i32; MAX_RANK]> {
    prop::array::uniform4(-bound..=bound)
}

fn raw_t() -> impl Strategy<Value = [u16; MAX_RANK]> {
    prop::array::uniform4(0u16..64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn length_is_inverse_and_omega_invariant(i in 0..DATA.len(), u in 0usize..48, raw in raw_cw(3), o1 in 0usize..8, o2 in 0usize..8) {
        let b = algebra(i);
        let sys = b.sys();
        let w = element(b, u, raw, [0; MAX_RANK]).proj();
        let l = sys.length(&w);
        prop_assert_eq!(sys.length(&sys.inv(&w)), l);
        let oms = sys.small_omegas(1);
        let (a, c) = (oms[o1 % oms.len()], oms[o2 % oms.len()]);
        prop_assert_eq!(sys.length(&sys.mul(&sys.mul(&a, &w), &c)), l);
        let (om, word) = sys.decompose(&w);
        prop_assert_eq!(word.len(), l);
        prop_assert_eq!(sys.length(&om), 0);
        prop_assert_eq!(sys.from_word(&om, &word), w);
    }

    #[test]
    fn each_coset_has_one_distinguished_element(i in 0..DATA.len(), u in 0usize..48, raw in raw_cw(3)) {
        let b = algebra(i);
        let sys = b.sys();
        let w = element(b, u, raw, [0; MAX_RANK]).proj();
        let weyl = &b.rd().weyl;
        let hits = weyl.elements().filter(|&v| sys.is_distinguished(&sys.mul(&WElem::finite(v), &w))).count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn chambers_are_images_of_the_dominant_chamber(i in 0..DATA.len(), raw in raw_cw(4), bits in 0u32..8) {
        let b = algebra(i);
        let rd = b.rd();
        let f = Facet(bits & ((1 << rd.rank) - 1));
        let lam = coweight(b, raw);
        let wf = rd.longest(f);
        prop_assert_eq!(b.in_chamber(&lam, f, Sign::Plus), b.in_chamber(&cw_neg(&lam), f, Sign::Minus));
        prop_assert_eq!(b.in_chamber(&lam, f, Sign::Plus), rd.is_dominant(&rd.weyl.apply(rd.weyl.inv(wf), &lam)));
    }

    #[test]
    fn orbit_sizes_divide_the_weyl_order(i in 0..DATA.len(), raw in raw_cw(4)) {
        let b = algebra(i);
        let rd = b.rd();
        let n = rd.weyl_orbit(&coweight(b, raw)).len();
        prop_assert_eq!(rd.weyl.len() % n, 0);
    }

    #[test]
    fn group_law_is_associative_with_inverses(i in 0..DATA.len(), us in prop::array::uniform3(0usize..48), raws in prop::array::uniform3(raw_cw(2)), ts in prop::array::uniform3(raw_t())) {
        let b = algebra(i);
        let g = b.g();
        let [x, y, z] = [0, 1, 2].map(|k| element(b, us[k], raws[k], ts[k]));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), TElem::ID);
        prop_assert_eq!(g.mul(&x, &TElem::ID), x);
        prop_assert_eq!(g.mul(&TElem::ID, &x), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_product_is_associative(i in 0..DATA.len(), us in prop::array::uniform3(0usize..48), raws in prop::array::uniform3(raw_cw(1)), ts in prop::array::uniform3(raw_t())) {
        let b = algebra(i);
        let h = &*b.h;
        let [x, y, z] = [0, 1, 2].map(|k| element(b, us[k], raws[k], ts[k]));
        let r = &h.generic;
        let (a, c, d) = (h.basis(r, x), h.basis(r, y), h.basis(r, z));
        prop_assert_eq!(h.mul(r, &h.mul(r, &a, &c), &d), h.mul(r, &a, &h.mul(r, &c, &d)));
        let r = &h.charp;
        let (a, c, d) = (h.basis(r, x), h.basis(r, y), h.basis(r, z));
        prop_assert_eq!(h.mul(r, &h.mul(r, &a, &c), &d), h.mul(r, &a, &h.mul(r, &c, &d)));
    }

    #[test]
    fn involutions_square_to_the_identity(i in 0..DATA.len(), u in 0usize..48, raw in raw_cw(1), t in raw_t()) {
        let b = algebra(i);
        let h = &*b.h;
        let x = h.basis(&h.generic, element(b, u, raw, t));
        prop_assert_eq!(h.iota(&h.iota(&x)), x.clone());
        prop_assert_eq!(h.iota_c(&h.iota_c(&x)), x);
    }

    #[test]
    fn affine_and_finite_parts_are_subrings(i in 0..DATA.len(), us in prop::array::uniform2(0usize..48), raws in prop::array::uniform2(raw_cw(2)), ts in prop::array::uniform2(raw_t())) {
        let b = algebra(i);
        let h = &*b.h;
        let sys = b.sys();
        let r = &h.generic;
        let zero_class = sys.omega_class(&WElem::ID);
        // push each factor into the affine part by stripping its Ω component
        let aff = |k: usize| {
            let x = element(b, us[k], raws[k], ts[k]);
            let (om, _) = sys.decompose(&x.proj());
            b.g().mul(&x, &b.g().inv(&TElem::lift(&om)))
        };
        let (x, y) = (aff(0), aff(1));
        let p = h.mul(r, &h.basis(r, x), &h.basis(r, y));
        prop_assert!(p.support().all(|w| sys.omega_class(&w.proj()) == zero_class));
        let fin = |k: usize| element(b, us[k], [0; MAX_RANK], ts[k]);
        let p = h.mul(r, &h.basis(r, fin(0)), &h.basis(r, fin(1)));
        prop_assert!(p.support().all(|w| w.lam == [0; MAX_RANK]));
    }

    #[test]
    fn bernstein_product_rule(i in 0..DATA.len(), r1 in raw_cw(1), r2 in raw_cw(1), bits in 0u32..8, plus in any::<bool>()) {
        let b = algebra(i);
        let h = &*b.h;
        let rd = b.rd();
        let f = Facet(bits & ((1 << rd.rank) - 1));
        let s = if plus { Sign::Plus } else { Sign::Minus };
        let (m1, m2) = (coweight(b, r1), coweight(b, r2));
        let sum = cw_add(&m1, &m2);
        let e = b.length_translation(&m1) + b.length_translation(&m2) - b.length_translation(&sum);
        prop_assert_eq!(e % 2, 0);
        let r = &h.generic;
        let lhs = h.mul(r, &b.bernstein_lam(f, s, &m1).unwrap(), &b.bernstein_lam(f, s, &m2).unwrap());
        let rhs = h.scale(r, &b.bernstein_lam(f, s, &sum).unwrap(), &Laurent::q_pow(1, (e / 2) as i32));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernstein_basis_round_trip(i in 0..DATA.len(), u in 0usize..48, raw in raw_cw(1), t in raw_t()) {
        let b = algebra(i);
        let h = &*b.h;
        let r = &h.generic;
        let x = h.basis(r, element(b, u, raw, t));
        let coords = b.to_bernstein_basis(r, &x).unwrap();
        prop_assert_eq!(b.from_bernstein_basis(r, &coords).unwrap(), x);
    }

    #[test]
    fn bruhat_below_f_positive_translation_is_f_positive(i in prop::sample::select(vec![0usize, 1, 3]), raw in raw_cw(2), bits in 0u32..4) {
        let b = algebra(i);
        let sys = b.sys();
        let rd = b.rd();
        let f = Facet(bits & ((1 << rd.rank) - 1));
        let lam = coweight(b, raw);
        let top = WElem::translation(lam);
        prop_assume!(sys.is_f_positive(&top, f).unwrap());
        // the order is the Bruhat order of the Levi's own affine Weyl group
        let levi = AffineSystem::levi(rd_arc(i), f);
        let l = levi.length(&top);
        prop_assume!(l <= 6);
        let (om, _) = levi.decompose(&top);
        for v in levi.elements_up_to(l, &[om]) {
            if levi.bruhat_leq(&v, &top) {
                prop_assert!(sys.is_f_positive(&v, f).unwrap(), "{} ≤ {}", sys.format(&v), sys.format(&top));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_are_deterministic(seed in any::<u64>(), jobs in 1usize..4) {
        let mut cfg = SuiteConfig::new("SL2", 3);
        cfg.seed = seed;
        cfg.samples = 100;
        cfg.checks = vec!["relations".into(), "lemma-3.4".into(), "eq-5.1".into(), "prop-2.10".into()];
        let a = run_suite(&cfg).unwrap().render(Format::Json);
        cfg.jobs = jobs;
        let b = run_suite(&cfg).unwrap().render(Format::Json);
        prop_assert_eq!(a, b);
    }
}
