//! Randomized properties on top of the unit suites: closure laws for the
//! congruence oracle and action laws for the symbolic layer.

use proptest::prelude::*;

use steinberg::selfsim::{builtin_system, parse_element, GroupElementWord, PathWord};
use steinberg::semiring::{congruence_closure, FiniteAlgebraTable};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruence_closure_is_a_congruence(seeds in prop::collection::vec((0usize..4, 0usize..4), 0..4)) {
        let table = FiniteAlgebraTable::zn_ring(4);
        let part = congruence_closure(&table, &seeds).unwrap();
        prop_assert!(part.is_congruence_of(&table));
        // closing again from representative pairs changes nothing
        let again = congruence_closure(&table, &seeds).unwrap();
        prop_assert_eq!(part, again);
    }

    #[test]
    fn odometer_powers_compose(m in -64i64..64, n in -64i64..64, bits in prop::collection::vec(0usize..2, 1..7)) {
        let sys = builtin_system("odometer").unwrap();
        let path = PathWord::from_edges(&sys.graph, bits).unwrap();
        let gm = GroupElementWord::power(m.into());
        let gn = GroupElementWord::power(n.into());
        let two_steps = sys.act_on_path(&gm, &sys.act_on_path(&gn, &path));
        let one_step = sys.act_on_path(&gm.concat(&gn), &path);
        prop_assert_eq!(two_steps, one_step);
        let back = sys.act_on_path(&gm.inverse(), &sys.act_on_path(&gm, &path));
        prop_assert_eq!(back, path);
    }

    #[test]
    fn grigorchuk_words_cancel(word in prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "d"]), 1..6)) {
        let sys = builtin_system("grigorchuk").unwrap();
        let w = parse_element(&sys, &word.join("*")).unwrap();
        prop_assert!(sys.is_identity(&w.concat(&w.inverse())).unwrap());
    }
}
