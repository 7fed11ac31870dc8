//! Expansion catalogs against exhaustive enumeration, and reductions of
//! every catalog member.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use trisurg::complex::{canonical_form, is_equivalent, CanonicalForm, Class};
use trisurg::fixtures;
use trisurg::generate::exhaustive::{irreducible_members, punctured_surfaces};
use trisurg::generate::{catalog_dir, enumerate, Catalog};
use trisurg::reduce::{certify, reduce_to_4minimal, reduce_to_irreducible, Verdict};

fn in_class(codes: &BTreeSet<CanonicalForm>, class: Class) -> BTreeSet<CanonicalForm> {
    codes
        .iter()
        .filter(|c| class.contains(&c.to_triangulation().unwrap()))
        .cloned()
        .collect()
}

fn codes(cat: &Catalog) -> BTreeSet<CanonicalForm> {
    cat.levels.values().flat_map(|l| l.keys().cloned()).collect()
}

fn golden(key: &str) -> BTreeMap<usize, usize> {
    let text = include_str!("golden/catalog_counts.txt");
    let line = text
        .lines()
        .find(|l| l.split(' ').next() == Some(key))
        .unwrap_or_else(|| panic!("no golden counts for {key}"));
    line.split(' ')
        .skip(1)
        .map(|p| {
            let (n, c) = p.split_once(':').unwrap();
            (n.parse().unwrap(), c.parse().unwrap())
        })
        .collect()
}

fn key(cat: &Catalog) -> String {
    catalog_dir(std::path::Path::new(""), cat.surface, cat.class)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn two_disk_oracles_agree() {
    let shelled = common::all_disks(8);
    let punctured = punctured_surfaces(8, 2);
    assert_eq!(shelled, punctured);
    let by_size: BTreeMap<usize, usize> = shelled.iter().fold(BTreeMap::new(), |mut m, c| {
        *m.entry(c.num_vertices()).or_insert(0) += 1;
        m
    });
    assert_eq!(by_size, BTreeMap::from([(3, 1), (4, 2), (5, 4), (6, 16), (7, 63), (8, 328)]));
}

#[test]
fn f0_disks_are_generated_by_the_flag_and_the_octahedron() {
    let all = in_class(&common::all_disks(8), Class::F0);
    let cat = enumerate(&[fixtures::flag5(), fixtures::disk_oct()], Class::F0, 8).unwrap();
    assert_eq!(codes(&cat), all);
    assert_eq!(cat.counts(), golden(&key(&cat)));
    let bases = [canonical_form(&fixtures::flag5()), canonical_form(&fixtures::disk_oct())];
    for t in cat.members() {
        let (u, tr) = reduce_to_irreducible(&t).unwrap();
        assert!(bases.contains(&canonical_form(&u)), "{:?}", t.faces());
        assert!(cat.contains(&tr.terminal));
        assert!(tr.replay(&t).is_ok());
    }
}

#[test]
fn f4_disks_are_generated_by_the_octahedron() {
    let all = in_class(&punctured_surfaces(9, 2), Class::F4);
    let d = fixtures::disk_oct();
    let cat = enumerate(&[d.clone()], Class::F4, 9).unwrap();
    assert_eq!(codes(&cat), all);
    assert_eq!(cat.counts(), golden(&key(&cat)));
    for t in cat.members() {
        let (u, _, c) = reduce_to_4minimal(&t, false).unwrap();
        assert!(is_equivalent(&u, &d));
        assert_eq!(c.verdict, Verdict::DiskBase);
    }
}

#[test]
fn brute_force_mobius_irreducibles() {
    let strips = punctured_surfaces(9, 1);
    let irr = irreducible_members(&strips, Class::F0);
    let sizes: Vec<usize> = irr.iter().map(CanonicalForm::num_vertices).collect();
    assert_eq!(sizes, vec![5, 6, 6, 6, 6, 7]);
    assert!(irr.contains(&canonical_form(&fixtures::mobius_m1())));
    // one of them has a boundary triode and so is not in F²(4)
    assert_eq!(irreducible_members(&strips, Class::F4).len(), 5);
}

#[test]
fn mobius_strips_are_generated_by_their_minimal_members() {
    let strips: BTreeSet<_> = punctured_surfaces(8, 1);
    for class in [Class::F0, Class::F4] {
        let members = in_class(&strips, class);
        let minimal: Vec<_> = members
            .iter()
            .map(|c| c.to_triangulation().unwrap())
            .filter(|t| !matches!(certify(t, class).verdict, Verdict::NotMinimal(_)))
            .collect();
        assert!(minimal.iter().all(|t| certify(t, class).verdict == Verdict::Irreducible));
        let cat = enumerate(&minimal, class, 8).unwrap();
        assert_eq!(codes(&cat), members, "{class}");
        assert_eq!(cat.counts(), golden(&key(&cat)));
    }
}

#[test]
fn mobius_catalog_reductions_stay_in_the_catalog() {
    let cat = enumerate(&[fixtures::mobius_m1()], Class::F4, 7).unwrap();
    for t in cat.members() {
        let s = t.classify();
        assert_eq!((s.euler_characteristic, s.orientable, s.boundary_components), (0, false, 1));
        let (_, tr, c) = reduce_to_4minimal(&t, false).unwrap();
        assert!(c.is_sound(), "{:?}", t.faces());
        assert!(cat.contains(&tr.terminal));
    }
}
