use pinclass::cperm::normal_form;
use pinclass::growth::{default_tol, smallest_positive_root, Sturm};
use pinclass::series::{rat, Poly, RatGF};
use pinclass::{pi_map, CentredPerm, Direction, FactorMode, PinSpec, PinWord, Quadrant, Symmetry};
use proptest::prelude::*;

fn quadrant() -> impl Strategy<Value = Quadrant> {
    (1u8..=4).prop_map(|n| Quadrant::from_number(n).unwrap())
}

fn letters(start: Option<Direction>, len: usize, choices: Vec<bool>) -> Vec<Direction> {
    let mut out = Vec::with_capacity(len);
    let mut prev = start;
    for i in 0..len {
        let d = match prev {
            None => Direction::ALL[(choices[i] as usize) * 2 + choices[i + len] as usize],
            Some(p) => p.successors()[choices[i] as usize],
        };
        out.push(d);
        prev = Some(d);
    }
    out
}

fn pin_word(max_letters: usize) -> impl Strategy<Value = PinWord> {
    (quadrant(), 0..=max_letters, prop::collection::vec(any::<bool>(), 2 * max_letters + 2))
        .prop_map(|(q, len, bits)| PinWord::new(q, letters(None, len, bits)).unwrap())
}

fn centred_perm(max_len: usize) -> impl Strategy<Value = CentredPerm> {
    (0..=max_len)
        .prop_flat_map(|n| (Just((1..=n as u32 + 1).collect::<Vec<_>>()).prop_shuffle(), 1..=n + 1))
        .prop_map(|(filled, origin)| CentredPerm::new(filled, origin).unwrap())
}

fn indecomposable() -> impl Strategy<Value = CentredPerm> {
    pin_word(5).prop_map(|w| pi_map(&w)).prop_filter("indecomposable", |p| p.is_box_indecomposable().unwrap())
}

fn spec() -> impl Strategy<Value = PinSpec> {
    (quadrant(), 0usize..=3, 1usize..=3, prop::collection::vec(any::<bool>(), 16)).prop_filter_map(
        "alternating spec",
        |(q, p, half, bits)| {
            let prefix = letters(None, p, bits[..8].to_vec());
            let cycle = letters(prefix.last().copied(), 2 * half, bits[8..].to_vec());
            PinSpec::new(q, prefix, cycle).ok()
        },
    )
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..=4).prop_map(|c| Poly::from_ints(&c))
}

fn gf() -> impl Strategy<Value = RatGF> {
    (small_poly(), prop::collection::vec(-3i64..=3, 0..=3)).prop_map(|(num, tail)| {
        let mut den = vec![1];
        den.extend(tail);
        RatGF::new(num, Poly::from_ints(&den)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn box_sum_is_associative(a in centred_perm(3), b in centred_perm(3), c in centred_perm(3)) {
        let left = CentredPerm::box_sum(&CentredPerm::box_sum(&a, &b), &c);
        let right = CentredPerm::box_sum(&a, &CentredPerm::box_sum(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn box_sum_cancels(a in centred_perm(3), b in centred_perm(3), c in centred_perm(3)) {
        if b != c {
            prop_assert_ne!(CentredPerm::box_sum(&a, &b), CentredPerm::box_sum(&a, &c));
            prop_assert_ne!(CentredPerm::box_sum(&b, &a), CentredPerm::box_sum(&c, &a));
        }
    }

    #[test]
    fn empty_is_identity(a in centred_perm(5)) {
        let e = CentredPerm::empty();
        prop_assert_eq!(CentredPerm::box_sum(&e, &a), a.clone());
        prop_assert_eq!(CentredPerm::box_sum(&a, &e), a);
    }

    #[test]
    fn decomposition_round_trips(a in centred_perm(6)) {
        let parts = a.box_decompose();
        prop_assert!(parts.iter().all(|p| p.is_box_indecomposable().unwrap()));
        prop_assert_eq!(parts.iter().map(CentredPerm::len).sum::<usize>(), a.len());
        prop_assert_eq!(CentredPerm::compose(&parts), a);
    }

    #[test]
    fn normal_forms_agree(parts in prop::collection::vec(indecomposable(), 1..=4)) {
        let p = CentredPerm::compose(&parts);
        let direct = normal_form(&parts).unwrap();
        let recovered = normal_form(&p.box_decompose()).unwrap();
        prop_assert_eq!(&direct, &recovered);
        prop_assert_eq!(CentredPerm::compose(&direct), p);
    }

    #[test]
    fn containment_is_downward(a in centred_perm(6)) {
        prop_assert!(a.contains(&a));
        prop_assert!(a.contains(&CentredPerm::empty()));
        for pos in (0..a.filled().len()).filter(|&i| i != a.origin_index()) {
            let b = a.delete_point(pos);
            prop_assert!(a.contains(&b));
            prop_assert!(!b.contains(&a));
        }
    }

    #[test]
    fn oneline_round_trips(a in centred_perm(12)) {
        prop_assert_eq!(a.to_oneline().parse::<CentredPerm>().unwrap(), a);
    }

    #[test]
    fn pin_prefixes_are_contained(w in pin_word(8)) {
        let full = pi_map(&w);
        prop_assert_eq!(full.len(), w.len());
        for j in 1..w.len() {
            prop_assert!(full.contains(&pi_map(&w.prefix(j).unwrap())));
        }
    }

    #[test]
    fn symmetries_commute_with_pi(w in pin_word(8)) {
        for s in Symmetry::all() {
            prop_assert_eq!(pi_map(&s.word(&w)), s.perm(&pi_map(&w)));
        }
    }

    #[test]
    fn pin_factors_are_consistent(s in spec(), n in 1usize..=6) {
        let all = s.enumerate_pin_factors(n, FactorMode::All);
        let rec = s.enumerate_pin_factors(n, FactorMode::Recurrent);
        prop_assert!(rec.is_subset(&all));
        prop_assert!(!rec.is_empty());
        prop_assert!(all.iter().all(|w| w.len() == n));
        let long = s.initial_segment(n + 2 * s.prefix_len() + 4 * s.period());
        prop_assert!(all.contains(&long.prefix(n).unwrap()));
        for w in &all {
            prop_assert!(pi_map(&long).contains(&pi_map(w)));
        }
    }

    #[test]
    fn truncation_keeps_recurrent_factors(s in spec(), n in 1usize..=6) {
        let t = s.left_truncate(s.prefix_len() + 2).unwrap();
        prop_assert!(t.is_recurrent());
        prop_assert_eq!(
            t.enumerate_pin_factors(n, FactorMode::All),
            s.enumerate_pin_factors(n, FactorMode::Recurrent)
        );
    }

    #[test]
    fn canonical_is_idempotent(s in spec()) {
        let c = s.canonical();
        prop_assert_eq!(c.canonical().to_string(), c.to_string());
        prop_assert_eq!(&c, &s);
        let a: Vec<_> = (2..=30).map(|k| s.letter(k)).collect();
        let b: Vec<_> = (2..=30).map(|k| c.letter(k)).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn field_axioms(a in gf(), b in gf(), c in gf()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), RatGF::zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
        }
    }

    #[test]
    fn seq_is_convolution(g in gf()) {
        let g = g.mul(&RatGF::from_poly(Poly::z()));
        let f = g.seq().unwrap();
        let fc = f.coeffs(10).unwrap();
        let gc = g.coeffs(10).unwrap();
        prop_assert_eq!(&fc[0], &rat(1));
        for n in 1..=10 {
            let conv = (1..=n).fold(rat(0), |acc, k| acc + &gc[k] * &fc[n - k]);
            prop_assert_eq!(&fc[n], &conv);
        }
    }

    #[test]
    fn polynomial_division(a in small_poly(), b in small_poly()) {
        if !b.is_zero() {
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a.clone());
            prop_assert!(r.is_zero() || r.degree() < b.degree());
            let g = a.gcd(&b);
            prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
            prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
        }
        prop_assert_eq!(Poly::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn root_isolation_is_certified(p in small_poly()) {
        let p = &Poly::from_ints(&[1]) - &(&p * &Poly::z());
        if let Ok((lo, hi)) = smallest_positive_root(&p, &default_tol()) {
            let s = Sturm::new(&p);
            prop_assert_eq!(s.count(&rat(0), &lo), 0);
            prop_assert_eq!(s.count(&lo, &hi), 1);
            prop_assert!(&hi - &lo <= default_tol());
        }
    }
}

