use proptest::prelude::*;
use schur_rainbow::constructions::{closed_form_rb_grid, lower_bound_coloring, valuation_coloring};
use schur_rainbow::search::{collect_rainbow_free, exists_rainbow_free, rb_search, verify_certificate};
use schur_rainbow::{
    is_rainbow_free, Certificate, Coloring, GridDims, GridPoint, RbOutcome, RbStrategy, SearchBudget, SolutionIndex,
    Space,
};

fn brute_free(c: &Coloring) -> bool {
    let d = c.dims();
    let pts: Vec<GridPoint> = d.points().collect();
    pts.iter().enumerate().all(|(x, &a)| {
        pts[x + 1..].iter().all(|&b| {
            let s = GridPoint::new(a.i + b.i, a.j + b.j);
            !d.contains(s) || {
                let (ca, cb, cs) = (c.color(a), c.color(b), c.color(s));
                ca == cb || ca == cs || cb == cs
            }
        })
    })
}

fn arb_coloring() -> impl Strategy<Value = Coloring> {
    (1usize..=4, 1usize..=5, 1u32..=6).prop_flat_map(|(m, n, k)| {
        let d = GridDims::new(m, n).unwrap();
        proptest::collection::vec(1..=k, d.cell_count()).prop_map(move |cells| Coloring::new(d, cells, k).unwrap())
    })
}

/// A rainbow-free exact coloring drawn from a full enumeration.
fn arb_rainbow_free() -> impl Strategy<Value = Coloring> {
    (2usize..=3, 2usize..=4, 2usize..=7, any::<prop::sample::Index>()).prop_filter_map(
        "no rainbow-free coloring",
        |(m, n, r, pick)| {
            let d = GridDims::new(m, n).ok()?;
            if r > d.cell_count() {
                return None;
            }
            let (all, _) = collect_rainbow_free(&SolutionIndex::grid(d), r, &SearchBudget::unlimited()).ok()?;
            (!all.is_empty()).then(|| all[pick.index(all.len())].clone())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rainbow_check_matches_brute_force(c in arb_coloring()) {
        prop_assert_eq!(is_rainbow_free(&c, &SolutionIndex::grid(c.dims())), brute_free(&c));
    }

    #[test]
    fn merging_colors_keeps_rainbow_free(c in arb_rainbow_free(), a in 1u32..=7, b in 1u32..=7) {
        let r = c.r();
        prop_assume!(a != b && a <= r && b <= r);
        let merged = c.merge_colors(a, b).unwrap();
        prop_assert!(merged.is_exact());
        prop_assert_eq!(merged.r(), r - 1);
        prop_assert!(brute_free(&merged));
    }

    #[test]
    fn canonical_form_is_stable(c in arb_coloring()) {
        let k = c.canonicalize();
        prop_assert_eq!(&k.canonicalize(), &k);
        prop_assert_eq!(brute_free(&k), brute_free(&c));
        prop_assert_eq!(k.distinct_colors().len(), c.distinct_colors().len());
    }

    #[test]
    fn witness_certificates_round_trip(c in arb_rainbow_free()) {
        let cert = Certificate::witness(Space::Grid(c.dims()), c, 17);
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(verify_certificate(&back, &SearchBudget::unlimited()).is_ok());
    }

    #[test]
    fn lower_bound_coloring_is_extremal(m in 2usize..=30, n in 2usize..=30) {
        let d = GridDims::new(m, n).unwrap();
        let c = lower_bound_coloring(d).unwrap();
        prop_assert!(c.is_exact());
        prop_assert_eq!(c.r() as usize, m + n);
        prop_assert!(brute_free(&c));
    }

    #[test]
    fn valuation_coloring_is_rainbow_free(n in 1usize..=1500) {
        let c = valuation_coloring(n).unwrap();
        prop_assert!(c.is_exact());
        let cells = c.cells();
        for a in 1..=n {
            for b in a + 1..=n.saturating_sub(a) {
                let (x, y, z) = (cells[a - 1], cells[b - 1], cells[a + b - 1]);
                prop_assert!(x == y || x == z || y == z, "{} + {} = {}", a, b, a + b);
            }
        }
    }

    #[test]
    fn witnesses_exist_below_the_threshold(m in 2usize..=4, n in 2usize..=5, r in 1usize..=8) {
        let d = GridDims::new(m, n).unwrap();
        prop_assume!(r < closed_form_rb_grid(d));
        let cert = exists_rainbow_free(d, r, &SearchBudget::unlimited()).unwrap();
        prop_assert!(cert.is_witness());
        prop_assert!(brute_free(cert.coloring.as_ref().unwrap()));
    }

    #[test]
    fn bracket_contains_rb(m in 2usize..=3, n in 2usize..=5, cap in 1u64..=200) {
        let d = GridDims::new(m, n).unwrap();
        let budget = SearchBudget { max_nodes: Some(cap), ..SearchBudget::unlimited() };
        let exact = rb_search(d, &SearchBudget::unlimited(), RbStrategy::Scan).unwrap().exact().unwrap().rb;
        match rb_search(d, &budget, RbStrategy::Binary).unwrap() {
            RbOutcome::Exact(r) => prop_assert_eq!(r.rb, exact),
            RbOutcome::Bracketed { lower, upper, nodes, .. } => {
                prop_assert!(lower <= exact && exact <= upper);
                prop_assert!(nodes >= cap);
            }
        }
    }
}

#[test]
fn threads_do_not_change_answers() {
    for (m, n) in [(2, 6), (3, 4), (3, 5), (4, 4)] {
        let d = GridDims::new(m, n).unwrap();
        let one = rb_search(d, &SearchBudget::unlimited(), RbStrategy::Scan)
            .unwrap()
            .exact()
            .unwrap()
            .rb;
        let many = rb_search(
            d,
            &SearchBudget {
                threads: 8,
                ..SearchBudget::unlimited()
            },
            RbStrategy::Binary,
        )
        .unwrap()
        .exact()
        .unwrap()
        .rb;
        assert_eq!(one, many);
        assert_eq!(one, closed_form_rb_grid(d));
    }
}
