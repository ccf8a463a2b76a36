mod common;

use common::hopf::{fuzz, mutate, Maps, Slot};
use qinv_core::hopfcheck::{
    check_all, check_axiom, cyclic_group, direct_product, dual_hopf, function_algebra,
    group_algebra, symmetric_group, Axiom, FiniteBialgebra,
};

#[test]
fn function_algebras_and_duals_pass() {
    let groups = [
        ("Z/2", cyclic_group(2)),
        ("Z/4", cyclic_group(4)),
        ("S3", symmetric_group(3)),
        ("Z/8", cyclic_group(8)),
        (
            "Z/2 x Z/4",
            direct_product(&cyclic_group(2), &cyclic_group(4)),
        ),
        (
            "Z/2 x Z/2 x Z/2",
            direct_product(
                &cyclic_group(2),
                &direct_product(&cyclic_group(2), &cyclic_group(2)),
            ),
        ),
    ];
    for (name, g) in &groups {
        for b in [function_algebra(g), group_algebra(g)] {
            assert!(check_all(&b).iter().all(|(_, r)| r.is_ok()), "{name}");
            let dual = dual_hopf(&b).unwrap();
            assert!(
                check_all(&dual).iter().all(|(_, r)| r.is_ok()),
                "dual of {name}"
            );
        }
    }
}

#[test]
fn duals_of_function_algebras_are_group_algebras() {
    for g in [cyclic_group(4), symmetric_group(3)] {
        assert_eq!(dual_hopf(&function_algebra(&g)).unwrap(), group_algebra(&g));
        assert_eq!(
            dual_hopf(&dual_hopf(&group_algebra(&g)).unwrap()).unwrap(),
            group_algebra(&g)
        );
    }
}

#[test]
fn every_single_entry_mutation_of_small_algebras() {
    fuzz("trivial", &FiniteBialgebra::trivial(), None);
    for (name, g) in [("Z/2", cyclic_group(2)), ("Z/4", cyclic_group(4))] {
        fuzz(&format!("Fun({name})"), &function_algebra(&g), None);
        fuzz(
            &format!("Fun({name})*"),
            &dual_hopf(&function_algebra(&g)).unwrap(),
            None,
        );
    }
}

#[test]
fn sampled_mutations_of_s3() {
    let g = symmetric_group(3);
    fuzz("Fun(S3)", &function_algebra(&g), Some(120));
    fuzz("k[S3]", &group_algebra(&g), Some(120));
}

#[test]
fn witnesses_point_at_the_first_differing_entry() {
    let b = mutate(&group_algebra(&cyclic_group(2)), Slot::Mult(0, 0, 0), 1);
    let f = check_axiom(&b, Axiom::H1_1).unwrap_err();
    let oracle = Maps::of(&b);
    let lhs = &oracle.m * oracle.m.kronecker(&oracle.id());
    let rhs = &oracle.m * oracle.id().kronecker(&oracle.m);
    let (a, bb, f_, g) = (f.indices[0], f.indices[1], f.indices[2], f.indices[3]);
    assert_ne!(
        lhs[(g, (a * 2 + bb) * 2 + f_)],
        rhs[(g, (a * 2 + bb) * 2 + f_)]
    );
}
