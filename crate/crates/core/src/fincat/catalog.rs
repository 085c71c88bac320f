//! A zoo of small finite categories: preorders, parallel-arrow categories,
//! and groups viewed as one-object categories.
//!
//! The members of [`catalog`] are chosen so that changing any single
//! composition- or identity-table entry breaks a category law. Not every
//! valid category has that property (a single-cell change can turn one
//! valid monoid table into another), so the catalog sticks to families
//! where the laws pin every entry down.

use std::collections::BTreeMap;

use super::{FinCategory, MorId, Morphism, ObId};

fn mor_name(x: &str, y: &str) -> String {
    if x == y {
        format!("id_{x}")
    } else {
        format!("{x}_to_{y}")
    }
}

/// Thin category of a preorder. `pairs` lists related pairs `x <= y`;
/// reflexivity and transitivity are completed automatically.
pub fn preorder(objects: &[&str], pairs: &[(&str, &str)]) -> FinCategory {
    let n = objects.len();
    let index: BTreeMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (*o, i)).collect();
    let mut related = vec![vec![false; n]; n];
    for i in 0..n {
        related[i][i] = true;
    }
    for (x, y) in pairs {
        related[index[x]][index[y]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if related[i][k] && related[k][j] {
                    related[i][j] = true;
                }
            }
        }
    }

    let mut morphisms = Vec::new();
    let mut identity = BTreeMap::new();
    for (i, x) in objects.iter().enumerate() {
        identity.insert(ObId::new(*x), MorId::new(mor_name(x, x)));
        for (j, y) in objects.iter().enumerate() {
            if related[i][j] {
                morphisms.push(Morphism::new(mor_name(x, y), *x, *y));
            }
        }
    }
    let mut compose = BTreeMap::new();
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            if !related[i][j] {
                continue;
            }
            for (k, z) in objects.iter().enumerate() {
                if related[j][k] {
                    compose.insert(
                        (MorId::new(mor_name(y, z)), MorId::new(mor_name(x, y))),
                        MorId::new(mor_name(x, z)),
                    );
                }
            }
        }
    }
    FinCategory::new(
        objects.iter().map(|o| ObId::new(*o)).collect(),
        morphisms,
        identity,
        compose,
    )
    .expect("preorder data is well formed")
}

/// One-object category of a monoid given by its full multiplication table.
/// `table[(g, f)]` is the product `g * f`, read as "f then g".
pub fn monoid(elements: &[&str], unit: &str, product: impl Fn(&str, &str) -> String) -> FinCategory {
    let morphisms = elements
        .iter()
        .map(|e| Morphism::new(*e, "x", "x"))
        .collect();
    let mut compose = BTreeMap::new();
    for g in elements {
        for f in elements {
            compose.insert((MorId::new(*g), MorId::new(*f)), MorId::new(product(g, f)));
        }
    }
    FinCategory::new(
        vec![ObId::new("x")],
        morphisms,
        [(ObId::new("x"), MorId::new(unit))].into(),
        compose,
    )
    .expect("monoid data is well formed")
}

/// Two objects X, Y with `n` parallel arrows X -> Y (plus identities).
pub fn parallel(names: &[&str]) -> FinCategory {
    let mut morphisms = vec![
        Morphism::new("id_X", "X", "X"),
        Morphism::new("id_Y", "Y", "Y"),
    ];
    for u in names {
        morphisms.push(Morphism::new(*u, "X", "Y"));
    }
    let mut compose = BTreeMap::new();
    compose.insert((MorId::new("id_X"), MorId::new("id_X")), MorId::new("id_X"));
    compose.insert((MorId::new("id_Y"), MorId::new("id_Y")), MorId::new("id_Y"));
    for u in names {
        compose.insert((MorId::new(*u), MorId::new("id_X")), MorId::new(*u));
        compose.insert((MorId::new("id_Y"), MorId::new(*u)), MorId::new(*u));
    }
    FinCategory::new(
        vec![ObId::new("X"), ObId::new("Y")],
        morphisms,
        [
            (ObId::new("X"), MorId::new("id_X")),
            (ObId::new("Y"), MorId::new("id_Y")),
        ]
        .into(),
        compose,
    )
    .expect("parallel-arrow data is well formed")
}

/// Objects x, y, z with two parallel arrows x -> z and one arrow y -> z.
pub fn doubled_v() -> FinCategory {
    let morphisms = vec![
        Morphism::new("id_x", "x", "x"),
        Morphism::new("id_y", "y", "y"),
        Morphism::new("id_z", "z", "z"),
        Morphism::new("u1", "x", "z"),
        Morphism::new("u2", "x", "z"),
        Morphism::new("w", "y", "z"),
    ];
    let mut compose = BTreeMap::new();
    for x in ["x", "y", "z"] {
        let id = MorId::new(format!("id_{x}"));
        compose.insert((id.clone(), id.clone()), id);
    }
    for (m, src, tgt) in [("u1", "x", "z"), ("u2", "x", "z"), ("w", "y", "z")] {
        compose.insert(
            (MorId::new(m), MorId::new(format!("id_{src}"))),
            MorId::new(m),
        );
        compose.insert(
            (MorId::new(format!("id_{tgt}")), MorId::new(m)),
            MorId::new(m),
        );
    }
    FinCategory::new(
        vec![ObId::new("x"), ObId::new("y"), ObId::new("z")],
        morphisms,
        [
            (ObId::new("x"), MorId::new("id_x")),
            (ObId::new("y"), MorId::new("id_y")),
            (ObId::new("z"), MorId::new("id_z")),
        ]
        .into(),
        compose,
    )
    .expect("doubled-v data is well formed")
}

pub fn terminal() -> FinCategory {
    preorder(&["x"], &[])
}

pub fn discrete(objects: &[&str]) -> FinCategory {
    preorder(objects, &[])
}

/// The walking arrow x -> y.
pub fn chain2() -> FinCategory {
    preorder(&["x", "y"], &[("x", "y")])
}

/// The chain x -> y -> z with its composite.
pub fn chain3() -> FinCategory {
    preorder(&["x", "y", "z"], &[("x", "y"), ("y", "z")])
}

/// Two arrows into a common target: x -> z <- y.
pub fn poset_v() -> FinCategory {
    preorder(&["x", "y", "z"], &[("x", "z"), ("y", "z")])
}

/// Two arrows out of a common source: x <- w -> y.
pub fn poset_lambda() -> FinCategory {
    preorder(&["w", "x", "y"], &[("w", "x"), ("w", "y")])
}

pub fn chain2_plus_point() -> FinCategory {
    preorder(&["p", "x", "y"], &[("x", "y")])
}

/// The walking isomorphism x ~ y.
pub fn walking_iso() -> FinCategory {
    preorder(&["x", "y"], &[("x", "y"), ("y", "x")])
}

pub fn walking_iso_plus_point() -> FinCategory {
    preorder(&["p", "x", "y"], &[("x", "y"), ("y", "x")])
}

/// X ⇉ Y with parallel arrows u and v.
pub fn parallel_pair() -> FinCategory {
    parallel(&["u", "v"])
}

pub fn parallel_pair_plus_point() -> FinCategory {
    let base = parallel(&["u", "v"]);
    let mut objects = base.objects().to_vec();
    objects.push(ObId::new("P"));
    let mut morphisms = base.morphisms().to_vec();
    morphisms.push(Morphism::new("id_P", "P", "P"));
    let mut identity = base.identity_table().clone();
    identity.insert(ObId::new("P"), MorId::new("id_P"));
    let mut compose = base.compose_table().clone();
    compose.insert((MorId::new("id_P"), MorId::new("id_P")), MorId::new("id_P"));
    FinCategory::new(objects, morphisms, identity, compose).expect("well formed")
}

/// The idempotent monoid {id, s} with s o s = s. A perfectly valid
/// category, but deliberately not a catalog member: flipping its single
/// nontrivial entry yields the (also valid) cyclic group of order 2.
pub fn idempotent_monoid() -> FinCategory {
    monoid(&["id_x", "s"], "id_x", |g, f| {
        if g == "id_x" {
            f.to_string()
        } else if f == "id_x" {
            g.to_string()
        } else {
            "s".to_string()
        }
    })
}

/// Cyclic group of order n as a one-object category. Element `e` is the
/// unit; `g<k>` is the k-th power of the generator.
pub fn cyclic(n: u32) -> FinCategory {
    assert!(n >= 2);
    let names: Vec<String> = (0..n)
        .map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let value = |k: u32| -> String {
        if k == 0 {
            "e".into()
        } else {
            format!("g{k}")
        }
    };
    let power = |name: &str| -> u32 {
        if name == "e" {
            0
        } else {
            name[1..].parse().unwrap()
        }
    };
    monoid(&refs, "e", move |g, f| value((power(g) + power(f)) % n))
}

/// The Klein four-group as a one-object category.
pub fn klein_four() -> FinCategory {
    let product = |g: &str, f: &str| -> String {
        match (g, f) {
            ("e", x) | (x, "e") => x.to_string(),
            (x, y) if x == y => "e".to_string(),
            ("a", "b") | ("b", "a") => "c".to_string(),
            ("a", "c") | ("c", "a") => "b".to_string(),
            ("b", "c") | ("c", "b") => "a".to_string(),
            _ => unreachable!(),
        }
    };
    monoid(&["e", "a", "b", "c"], "e", product)
}

/// The symmetric group on three letters as a one-object category.
pub fn sym3() -> FinCategory {
    // Permutations of [0,1,2]; p[i] is the image of i.
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2], // e
        [1, 2, 0], // r1
        [2, 0, 1], // r2
        [0, 2, 1], // s0
        [2, 1, 0], // s1
        [1, 0, 2], // s2
    ];
    const NAMES: [&str; 6] = ["e", "r1", "r2", "s0", "s1", "s2"];
    let index = |name: &str| NAMES.iter().position(|n| *n == name).unwrap();
    monoid(&NAMES, "e", move |g, f| {
        let (pg, pf) = (PERMS[index(g)], PERMS[index(f)]);
        let composed = [pg[pf[0]], pg[pf[1]], pg[pf[2]]];
        NAMES[PERMS.iter().position(|p| *p == composed).unwrap()].to_string()
    })
}

/// Z3 next to an isolated extra object.
pub fn z3_plus_point() -> FinCategory {
    let base = cyclic(3);
    let mut objects = base.objects().to_vec();
    objects.push(ObId::new("p"));
    let mut morphisms = base.morphisms().to_vec();
    morphisms.push(Morphism::new("id_p", "p", "p"));
    let mut identity = base.identity_table().clone();
    identity.insert(ObId::new("p"), MorId::new("id_p"));
    let mut compose = base.compose_table().clone();
    compose.insert((MorId::new("id_p"), MorId::new("id_p")), MorId::new("id_p"));
    FinCategory::new(objects, morphisms, identity, compose).expect("well formed")
}

/// The mutation-rigid catalog: at least 20 valid categories with at most
/// 3 objects and 6 morphisms each, on which every single-entry mutation of
/// the composition or identity tables violates some axiom.
pub fn catalog() -> Vec<(String, FinCategory)> {
    let entries: Vec<(&str, FinCategory)> = vec![
        ("terminal", terminal()),
        ("discrete2", discrete(&["x", "y"])),
        ("discrete3", discrete(&["x", "y", "z"])),
        ("chain2", chain2()),
        ("chain3", chain3()),
        ("poset_v", poset_v()),
        ("poset_lambda", poset_lambda()),
        ("chain2_plus_point", chain2_plus_point()),
        ("walking_iso", walking_iso()),
        ("walking_iso_plus_point", walking_iso_plus_point()),
        ("parallel_pair", parallel_pair()),
        ("parallel_pair_plus_point", parallel_pair_plus_point()),
        ("triple_parallel", parallel(&["u", "v", "w"])),
        ("quad_parallel", parallel(&["u1", "u2", "u3", "u4"])),
        ("doubled_v", doubled_v()),
        ("z3", cyclic(3)),
        ("z4", cyclic(4)),
        ("z5", cyclic(5)),
        ("z6", cyclic(6)),
        ("klein_four", klein_four()),
        ("sym3", sym3()),
        ("z3_plus_point", z3_plus_point()),
    ];
    entries
        .into_iter()
        .map(|(name, c)| (name.to_string(), c))
        .collect()
}

/// Every single-entry mutation of a category's composition and identity
/// tables: each entry replaced by each other morphism id.
pub fn single_entry_mutations(c: &FinCategory) -> Vec<FinCategory> {
    let all_ids: Vec<MorId> = c.morphisms().iter().map(|m| m.id.clone()).collect();
    let mut mutants = Vec::new();
    for ((g, f), gf) in c.compose_table() {
        for candidate in &all_ids {
            if candidate != gf {
                mutants.push(c.with_compose_entry(g, f, candidate.clone()));
            }
        }
    }
    for (x, id_x) in c.identity_table() {
        for candidate in &all_ids {
            if candidate != id_x {
                mutants.push(c.with_identity_entry(x, candidate.clone()));
            }
        }
    }
    mutants
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category_axioms;

    #[test]
    fn catalog_members_are_valid_and_within_bounds() {
        let entries = catalog();
        assert!(entries.len() >= 20);
        for (name, c) in &entries {
            assert!(c.objects().len() <= 3, "{name} has too many objects");
            assert!(c.morphisms().len() <= 6, "{name} has too many morphisms");
            assert!(
                check_category_axioms(c).is_empty(),
                "{name} is not a valid category"
            );
        }
    }

    #[test]
    fn catalog_members_are_mutation_rigid() {
        for (name, c) in catalog() {
            for (i, mutant) in single_entry_mutations(&c).iter().enumerate() {
                assert!(
                    !check_category_axioms(mutant).is_empty(),
                    "{name}: mutation #{i} went undetected"
                );
            }
        }
    }

    #[test]
    fn idempotent_monoid_is_not_rigid() {
        // Flipping s o s to the identity turns it into Z2, a valid category.
        let c = idempotent_monoid();
        let flipped = c.with_compose_entry(&"s".into(), &"s".into(), "id_x".into());
        assert!(check_category_axioms(&flipped).is_empty());
    }
}
