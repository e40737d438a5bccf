use std::collections::BTreeSet;

use proptest::prelude::*;

use emlift::instances::FinRel;
use emlift::kernel::{bags, Elem, Instance, Obj, Probe};

fn atom_bag(max: usize) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec(0u8..3, 0..=max).prop_map(|v| {
        let mut b: Vec<Elem> = v.into_iter().map(|i| Elem::atom(&format!("x{i}"))).collect();
        b.sort();
        b
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn relation(dom: &Obj, cod: &Obj, mask: u32) -> emlift::instances::Rel {
    let inst = FinRel::default();
    let xs = dom.finite_elements(1000).unwrap();
    let ys = cod.finite_elements(1000).unwrap();
    let mut pairs = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            if mask & (1 << (i * ys.len() + j)) != 0 {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    inst.from_pairs(dom, cod, &pairs).unwrap()
}

proptest! {
    #[test]
    fn zips_match_every_bijection(a in atom_bag(4), b in atom_bag(4)) {
        let got = bags::zips(&a, &b);
        let want: BTreeSet<Vec<Elem>> = if a.len() == b.len() {
            permutations(a.len())
                .into_iter()
                .map(|p| {
                    let mut z: Vec<Elem> =
                        p.iter().enumerate().map(|(i, &j)| Elem::pair(a[i].clone(), b[j].clone())).collect();
                    z.sort();
                    z
                })
                .collect()
        } else {
            BTreeSet::new()
        };
        let distinct: BTreeSet<_> = got.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), got.len());
        prop_assert_eq!(distinct, want);
    }

    #[test]
    fn two_splittings_recombine(b in atom_bag(5)) {
        let splits = bags::two_splittings(&b);
        let expected: usize = bags::runs(&b).iter().map(|(_, k)| k + 1).product();
        prop_assert_eq!(splits.len(), expected);
        for (l, r) in &splits {
            prop_assert_eq!(bags::union(l, r), b.clone());
        }
    }

    #[test]
    fn partitions_recombine(b in atom_bag(4)) {
        let parts = bags::partitions(&b);
        let distinct: BTreeSet<_> = parts.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), parts.len());
        for p in &parts {
            prop_assert!(p.iter().all(|q| !q.is_empty()));
            let mut flat: Vec<Elem> = p.iter().flatten().cloned().collect();
            flat.sort();
            prop_assert_eq!(flat, b.clone());
        }
    }

    #[test]
    fn bag_degree_is_size_plus_inner_degrees(inner in prop::collection::vec(atom_bag(3), 0..4)) {
        let outer = Elem::bag(inner.iter().cloned().map(Elem::bag).collect());
        let want = inner.len() + inner.iter().map(Vec::len).sum::<usize>();
        prop_assert_eq!(outer.degree(), want);
    }

    #[test]
    fn relation_composition_is_associative(f in 0u32..64, g in 0u32..64, h in 0u32..64) {
        let inst = FinRel::default();
        let x = Obj::base("X", &["a", "b"]);
        let y = Obj::base("Y", &["c", "d", "e"]);
        let z = Obj::base("Z", &["p", "q"]);
        let f = relation(&x, &y, f);
        let g = relation(&y, &z, g & 0x3f);
        let h = relation(&z, &x, h & 0xf);
        let left = inst.compose(&inst.compose(&f, &g).unwrap(), &h).unwrap();
        let right = inst.compose(&f, &inst.compose(&g, &h).unwrap()).unwrap();
        prop_assert!(inst.compare(&left, &right, &Probe::exhaustive(0)).unwrap().is_none());
    }

    #[test]
    fn relation_identity_is_neutral(f in 0u32..64) {
        let inst = FinRel::default();
        let x = Obj::base("X", &["a", "b"]);
        let y = Obj::base("Y", &["c", "d", "e"]);
        let f = relation(&x, &y, f);
        let l = inst.compose(&inst.id(&x).unwrap(), &f).unwrap();
        let r = inst.compose(&f, &inst.id(&y).unwrap()).unwrap();
        prop_assert!(inst.compare(&l, &f, &Probe::exhaustive(0)).unwrap().is_none());
        prop_assert!(inst.compare(&r, &f, &Probe::exhaustive(0)).unwrap().is_none());
    }
}
