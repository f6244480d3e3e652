//! Property tests for the fusion algebra and the language round trip.

use proptest::prelude::*;

use sigmaset::lang::{parse, Expr, Outcome, Session, Statement};
use sigmaset::{
    eval_chain, is_antielement_free_family, is_assoc_order, reference_fuse, triad_system, Atom,
    FusionChain, Polarity, SigmaSet,
};

/// Symbol pool stressing the lexical corners: digit-initial bases,
/// underscores, and non-ASCII letters.
const BASES: [&str; 8] = ["a", "b2", "x_1", "α", "β", "0", "10", "k"];

fn arb_set() -> impl Strategy<Value = SigmaSet> {
    proptest::collection::vec((0..BASES.len(), any::<bool>()), 0..=10).prop_map(|entries| {
        SigmaSet::from_atoms(entries.into_iter().map(|(index, anti)| {
            let polarity = if anti { Polarity::Anti } else { Polarity::Plain };
            Atom::new(BASES[index], polarity).expect("pool symbols are valid")
        }))
    })
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        arb_set().prop_map(|set| Expr::SetLit(set.iter().cloned().collect())),
        prop_oneof![Just("A"), Just("B"), Just("Γ")].prop_map(|name| Expr::Var(name.into())),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Expr::Fuse(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Expr::StarDiff(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Expr::HatIntersect(Box::new(l), Box::new(r))),
            inner.prop_map(|e| Expr::Anti(Box::new(e))),
        ]
    })
}

proptest! {
    #[test]
    fn fusion_is_commutative(x in arb_set(), y in arb_set()) {
        prop_assert_eq!(x.fuse(&y), y.fuse(&x));
    }

    #[test]
    fn empty_set_is_the_identity(x in arb_set()) {
        prop_assert_eq!(x.fuse(&SigmaSet::empty()), x);
    }

    #[test]
    fn fusion_is_idempotent(x in arb_set()) {
        prop_assert_eq!(x.fuse(&x), x);
    }

    #[test]
    fn mirror_images_annihilate(x in arb_set()) {
        prop_assert_eq!(x.fuse(&x.antiset()), SigmaSet::empty());
    }

    #[test]
    fn antiset_is_an_involution(x in arb_set()) {
        prop_assert_eq!(x.antiset().antiset(), x);
    }

    #[test]
    fn antiset_distributes_over_fusion(x in arb_set(), y in arb_set()) {
        prop_assert_eq!(x.fuse(&y).antiset(), x.antiset().fuse(&y.antiset()));
    }

    #[test]
    fn operation_outputs_are_canonical(x in arb_set(), y in arb_set()) {
        // Rebuilding from a result's own atoms must change nothing.
        for result in [x.fuse(&y), x.star_diff(&y), x.hat_intersect(&y), x.antiset()] {
            prop_assert_eq!(SigmaSet::from_atoms(result.iter().cloned()), result);
        }
    }

    #[test]
    fn fusion_agrees_with_the_reference_route(x in arb_set(), y in arb_set()) {
        prop_assert_eq!(x.fuse(&y), reference_fuse(&x, &y));
    }

    #[test]
    fn chain_antiset_commutes_with_evaluation(
        x in arb_set(),
        y in arb_set(),
        z in arb_set(),
    ) {
        let chain = FusionChain::new([x, y, z]).unwrap();
        prop_assert_eq!(chain.antiset().value(), chain.value().antiset());
    }

    #[test]
    fn reversal_preserves_the_value_exactly_when_the_order_associates(
        x in arb_set(),
        y in arb_set(),
        z in arb_set(),
    ) {
        // fuse(fuse(z, y), x) equals the right bracketing of (x, y, z)
        // by commutativity, so reversal invariance is associativity.
        let chain = FusionChain::new([x.clone(), y.clone(), z.clone()]).unwrap();
        prop_assert_eq!(
            chain.value() == chain.reversed().value(),
            is_assoc_order(&x, &y, &z),
        );
    }

    #[test]
    fn empty_residue_means_the_bracketings_agree(
        x in arb_set(),
        y in arb_set(),
        z in arb_set(),
    ) {
        let direct = x.fuse(&y).fuse(&z) == x.fuse(&y.fuse(&z));
        prop_assert_eq!(eval_chain(&x, &y, &z).is_empty(), direct);
    }

    #[test]
    fn antielement_free_families_associate(
        x in arb_set(),
        y in arb_set(),
        z in arb_set(),
    ) {
        if is_antielement_free_family(&[x.clone(), y.clone(), z.clone()]) {
            prop_assert!(triad_system(&x, &y, &z).locally_associative);
        }
    }

    #[test]
    fn set_display_round_trips_through_the_language(x in arb_set()) {
        let statements = parse(&x.to_string()).unwrap();
        let outcome = Session::new().eval_statement(&statements[0]).unwrap();
        prop_assert_eq!(outcome, Outcome::Value(x));
    }

    #[test]
    fn expression_display_round_trips_through_the_parser(expr in arb_expr()) {
        let statement = Statement::Expr(expr);
        let reparsed = parse(&statement.to_string()).unwrap();
        prop_assert_eq!(reparsed, vec![statement]);
    }
}

/// Exhaustive companion to the sampled properties: every pair over the
/// 3-symbol universe, checked for canonical closure of all four
/// operations.
#[test]
fn operation_outputs_are_canonical_exhaustively() {
    let universe = sigmaset::Universe::new(["1", "2", "3"]).unwrap();
    let all: Vec<SigmaSet> = sigmaset::enumerate_sigma_sets(&universe).collect();
    for x in &all {
        for y in &all {
            for result in [x.fuse(y), x.star_diff(y), x.hat_intersect(y), x.antiset()] {
                assert_eq!(SigmaSet::from_atoms(result.iter().cloned()), result);
            }
        }
    }
}

/// The two fusion routes agree on a large random sample over a wider
/// universe than the exhaustive suites reach.
#[test]
fn fusion_routes_agree_on_large_random_sample() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let bases: Vec<String> = (0..10).map(|i| format!("s{i}")).collect();
    let mut rng = StdRng::seed_from_u64(0xfade);
    let random_set = |rng: &mut StdRng| {
        SigmaSet::from_atoms(bases.iter().filter_map(|base| match rng.gen_range(0..3u8) {
            0 => None,
            1 => Some(Atom::new(base.clone(), Polarity::Plain).unwrap()),
            _ => Some(Atom::new(base.clone(), Polarity::Anti).unwrap()),
        }))
    };
    for _ in 0..10_000 {
        let x = random_set(&mut rng);
        let y = random_set(&mut rng);
        assert_eq!(x.fuse(&y), reference_fuse(&x, &y));
    }
}

#[test]
fn core_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Atom>();
    assert_send_sync::<SigmaSet>();
    assert_send_sync::<FusionChain>();
    assert_send_sync::<Session>();
    assert_send_sync::<sigmaset::GroupContext>();
    assert_send_sync::<sigmaset::Universe>();
}
