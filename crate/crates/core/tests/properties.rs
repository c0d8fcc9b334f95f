use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sgkit::document::{parse_input, serialize, DocError};
use sgkit::fixtures;
use sgkit::ribbon::{ArcSpec, CurveClass, OpenBook, RibbonSurface, Twist};
use sgkit::seifert::seifert_matrix;
use sgkit::sgengine::derive_bounds;
use sgkit::verify::random_surface;
use sgkit::zlinalg::{gcd, kernel_basis, smith_normal_form, solve_integer};
use sgkit::{IntMatrix, Sign};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |data| IntMatrix::from_vec(r, c, data).unwrap())
    })
}

fn wide(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn mul_wide(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| (0..b.len()).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

fn surface() -> impl Strategy<Value = RibbonSurface> {
    any::<u64>().prop_map(|seed| random_surface(&mut ChaCha8Rng::seed_from_u64(seed), 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in matrix(4, 6)) {
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(mul_wide(&mul_wide(&wide(&s.u), &wide(&a)), &wide(&s.v)), wide(&s.d));
        prop_assert_eq!(s.u.determinant().unwrap().abs(), 1);
        prop_assert_eq!(s.v.determinant().unwrap().abs(), 1);
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|&d| d >= 0));
        for w in diag.windows(2) {
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "{:?}", diag);
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert_eq!(s.d.row(i)[j], 0);
                }
            }
        }
    }

    #[test]
    fn kernel_basis_spans_the_right_rank(a in matrix(4, 4)) {
        let k = kernel_basis(&a).unwrap();
        prop_assert_eq!(k.len(), a.cols() - a.rank().unwrap());
        for v in &k {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            prop_assert_eq!(v.iter().fold(0, |g, &x| gcd(g, x)), 1);
        }
    }

    #[test]
    fn solvable_systems_are_solved(a in matrix(4, 5), seed in prop::collection::vec(-4i64..=4, 4)) {
        let x = &seed[..a.cols()];
        let b = a.mul_vec(x).unwrap();
        let sol = solve_integer(&a, &b).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(a.mul_vec(&sol.unwrap()).unwrap(), b);
    }

    #[test]
    fn seifert_antisymmetrization_is_the_intersection_form(s in surface()) {
        prop_assert_eq!(seifert_matrix(&s).antisymmetrization(), s.intersection_form());
        let n = s.band_count() as i64;
        prop_assert_eq!(2 * s.genus() as i64, 1 + n - s.boundary_components() as i64);
    }

    #[test]
    fn dehn_twists_preserve_the_intersection_form(s in surface(), coeffs in prop::collection::vec(-2i64..=2, 5), plus in any::<bool>()) {
        let n = s.band_count();
        prop_assume!(n > 0);
        let gamma = CurveClass::new(coeffs[..n].to_vec());
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let t = s.dehn_twist_action(&gamma, sign).unwrap();
        let j = s.intersection_form();
        prop_assert_eq!(t.transpose().mul(&j).unwrap().mul(&t).unwrap(), j);
        prop_assert_eq!(t.mul_vec(&gamma.coefficients).unwrap(), gamma.coefficients);
    }

    #[test]
    fn stabilization_changes_the_page_by_one_band(s in surface(), a in 0usize..12, b in 0usize..12) {
        let n = s.band_count();
        let (first, second) = (a % (2 * n + 2), b % (2 * n + 2));
        prop_assume!(first < second);
        let book = OpenBook::new(s.clone(), Vec::<Twist>::new()).unwrap();
        let stab = book.stabilize(ArcSpec::new(first, second)).unwrap();
        let page = stab.page();
        prop_assert_eq!(page.band_count(), n + 1);
        prop_assert_eq!(page.euler_characteristic(), s.euler_characteristic() - 1);
        // same boundary component: one more component; two different ones merge into a handle
        let (b0, b1) = (s.boundary_components(), page.boundary_components());
        if b1 == b0 + 1 {
            prop_assert_eq!(page.genus(), s.genus());
        } else {
            prop_assert_eq!(b1 + 1, b0);
            prop_assert_eq!(page.genus(), s.genus() + 1);
        }
        prop_assert!(stab.is_positive());
        prop_assert_eq!(seifert_matrix(page).antisymmetrization(), page.intersection_form());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derived_bounds_ignore_fact_order(order in Just((0..fixtures::trefoil_facts().resolve().unwrap().facts.unwrap().facts().len()).collect::<Vec<_>>()).prop_shuffle()) {
        let base = fixtures::trefoil_facts().resolve().unwrap().facts.unwrap();
        let reference = derive_bounds(&base).unwrap();
        let shuffled = derive_bounds(&base.with_fact_order(&order)).unwrap();
        for (id, _, _) in base.knots() {
            prop_assert_eq!(reference.interval(id).bounds(), shuffled.interval(id).bounds());
        }
    }

    #[test]
    fn fewer_facts_never_tighten_bounds(keep in prop::collection::vec(any::<bool>(), 200)) {
        let base = fixtures::trefoil_facts().resolve().unwrap().facts.unwrap();
        let kept: Vec<usize> = (0..base.facts().len()).filter(|&i| keep[i % keep.len()]).collect();
        let full = derive_bounds(&base).unwrap();
        let partial = derive_bounds(&base.with_facts(&kept)).unwrap();
        for (id, name, _) in base.knots() {
            let (lo, hi) = partial.interval(id).bounds();
            let (flo, fhi) = full.interval(id).bounds();
            prop_assert!(lo <= flo, "{}: lo {} > {}", name, lo, flo);
            prop_assert!(match (hi, fhi) { (None, _) => true, (Some(_), None) => false, (Some(h), Some(f)) => h >= f }, "{}", name);
        }
    }

    #[test]
    fn torus_documents_round_trip(k in 1i64..=6) {
        let doc = fixtures::torus_page(k);
        prop_assert_eq!(parse_input(&serialize(&doc)).unwrap(), doc);
    }

    #[test]
    fn twist_documents_round_trip(m in 1usize..=6) {
        let doc = fixtures::twist_page(m);
        prop_assert_eq!(parse_input(&serialize(&doc)).unwrap(), doc);
    }
}

#[test]
fn unknown_keys_are_rejected() {
    let err = parse_input("[[matrices]]\nname = \"m\"\nrows = [[1]]\ncolour = \"red\"\n").unwrap_err();
    assert!(matches!(err, DocError::Syntax(ref m) if m.contains("colour")), "{err}");
    let err = parse_input("[[knots]]\nname = \"m\"\n").unwrap_err();
    assert!(matches!(err, DocError::Syntax(_)), "{err}");
}

#[test]
fn dangling_references_are_reported() {
    let text = "[[curves]]\nname = \"K\"\nsurface = \"nowhere\"\nword = [\"+a\"]\n";
    match parse_input(text).unwrap_err() {
        DocError::Dangling { section, field, target, .. } => {
            assert_eq!((section, field, target.as_str()), ("curves", "surface", "nowhere"));
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn duplicate_names_are_reported() {
    let text = "[[matrices]]\nname = \"m\"\nrows = [[1]]\n[[matrices]]\nname = \"m\"\nrows = [[2]]\n";
    assert!(matches!(parse_input(text).unwrap_err(), DocError::Duplicate { section: "matrices", .. }));
}
