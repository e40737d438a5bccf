use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A canonical element of some carrier.
///
/// Bags are kept sorted, so structural equality is multiset equality and the
/// derived `Ord` is a canonical total order used by every enumerator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Elem {
    /// The single element of the monoidal unit.
    Star,
    /// A named element of a base set.
    Atom(Arc<str>),
    Pair(Box<Elem>, Box<Elem>),
    /// A finite multiset, sorted.
    Bag(Vec<Elem>),
    /// A function table: outputs listed in the domain's canonical order.
    Fun(Vec<Elem>),
}

impl Elem {
    pub fn atom(name: &str) -> Elem {
        Elem::Atom(Arc::from(name))
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }

    /// Builds a bag, sorting its contents into canonical order.
    pub fn bag(mut items: Vec<Elem>) -> Elem {
        items.sort();
        Elem::Bag(items)
    }

    pub fn empty_bag() -> Elem {
        Elem::Bag(Vec::new())
    }

    /// Size-based grading: base elements 0, pairs add, a bag counts its size
    /// plus the degrees of its members.
    pub fn degree(&self) -> usize {
        match self {
            Elem::Star | Elem::Atom(_) | Elem::Fun(_) => 0,
            Elem::Pair(a, b) => a.degree() + b.degree(),
            Elem::Bag(xs) => xs.len() + xs.iter().map(Elem::degree).sum::<usize>(),
        }
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_bag(&self) -> Option<&[Elem]> {
        match self {
            Elem::Bag(xs) => Some(xs),
            _ => None,
        }
    }

    /// Canonical text encoding used in witnesses and reports.
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Star => write!(f, "*"),
            Elem::Atom(a) => write!(f, "{a}"),
            Elem::Pair(a, b) => write!(f, "({a},{b})"),
            Elem::Bag(xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Elem::Fun(ys) => {
                write!(f, "fn<")?;
                for (i, y) in ys.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{y}")?;
                }
                write!(f, ">")
            }
        }
    }
}

/// Multiset operations on sorted bag contents.
pub mod bags {
    use super::*;

    /// Sorted union with multiplicity.
    pub fn union(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        out.extend_from_slice(a);
        out.extend_from_slice(b);
        out.sort();
        out
    }

    /// Groups a sorted bag into (element, multiplicity) runs.
    pub fn runs(b: &[Elem]) -> Vec<(Elem, usize)> {
        let mut out: Vec<(Elem, usize)> = Vec::new();
        for x in b {
            match out.last_mut() {
                Some((y, k)) if y == x => *k += 1,
                _ => out.push((x.clone(), 1)),
            }
        }
        out
    }

    /// All ordered pairs (b1, b2) of sorted bags with b1 ⊔ b2 = b.
    pub fn two_splittings(b: &[Elem]) -> Vec<(Vec<Elem>, Vec<Elem>)> {
        let rs = runs(b);
        let mut out = vec![(Vec::new(), Vec::new())];
        for (x, k) in rs {
            let mut next = Vec::with_capacity(out.len() * (k + 1));
            for (l, r) in &out {
                for i in 0..=k {
                    let mut l2 = l.clone();
                    let mut r2 = r.clone();
                    l2.extend(std::iter::repeat_n(x.clone(), i));
                    r2.extend(std::iter::repeat_n(x.clone(), k - i));
                    next.push((l2, r2));
                }
            }
            out = next;
        }
        out
    }

    /// All multiset partitions of `b` into nonempty parts, each returned as a
    /// sorted list of sorted parts.
    pub fn partitions(b: &[Elem]) -> Vec<Vec<Vec<Elem>>> {
        let mut seen = BTreeSet::new();
        let mut parts: Vec<Vec<Elem>> = Vec::new();
        fn go(rest: &[Elem], parts: &mut Vec<Vec<Elem>>, seen: &mut BTreeSet<Vec<Vec<Elem>>>) {
            match rest.split_first() {
                None => {
                    let mut p: Vec<Vec<Elem>> = parts.clone();
                    for q in p.iter_mut() {
                        q.sort();
                    }
                    p.sort();
                    seen.insert(p);
                }
                Some((x, tail)) => {
                    for i in 0..parts.len() {
                        // equal parts give equal results; skip repeats
                        if i > 0 && parts[i] == parts[i - 1] {
                            continue;
                        }
                        parts[i].push(x.clone());
                        go(tail, parts, seen);
                        parts[i].pop();
                    }
                    parts.push(vec![x.clone()]);
                    go(tail, parts, seen);
                    parts.pop();
                }
            }
        }
        go(b, &mut parts, &mut seen);
        seen.into_iter().collect()
    }

    /// All distinct bags of pairs obtained by matching `a` with `b`
    /// elementwise along some bijection. Empty when the sizes differ.
    pub fn zips(a: &[Elem], b: &[Elem]) -> Vec<Vec<Elem>> {
        if a.len() != b.len() {
            return Vec::new();
        }
        // Each distinct result is a matrix of counts between the runs of
        // `a` and the runs of `b`, so enumerating matrices never repeats.
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        a.sort();
        b.sort();
        let ra = runs(&a);
        let rb = runs(&b);
        let mut left: Vec<usize> = rb.iter().map(|r| r.1).collect();
        let mut out = Vec::new();
        let mut acc = Vec::with_capacity(a.len());
        fn fill(
            ra: &[(Elem, usize)],
            rb: &[(Elem, usize)],
            i: usize,
            j: usize,
            need: usize,
            left: &mut [usize],
            acc: &mut Vec<Elem>,
            out: &mut Vec<Vec<Elem>>,
        ) {
            if i == ra.len() {
                let mut z = acc.clone();
                z.sort();
                out.push(z);
                return;
            }
            if need == 0 {
                let next = ra.get(i + 1).map_or(0, |r| r.1);
                fill(ra, rb, i + 1, 0, next, left, acc, out);
                return;
            }
            if j == rb.len() {
                return;
            }
            let rest: usize = left[j + 1..].iter().sum();
            let lo = need.saturating_sub(rest);
            for k in lo..=need.min(left[j]) {
                left[j] -= k;
                for _ in 0..k {
                    acc.push(Elem::pair(ra[i].0.clone(), rb[j].0.clone()));
                }
                fill(ra, rb, i, j + 1, need - k, left, acc, out);
                acc.truncate(acc.len() - k);
                left[j] += k;
            }
        }
        let first = ra.first().map_or(0, |r| r.1);
        fill(&ra, &rb, 0, 0, first, &mut left, &mut acc, &mut out);
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Elem {
        Elem::atom("a")
    }
    fn b() -> Elem {
        Elem::atom("b")
    }

    #[test]
    fn degree_counts_bag_sizes() {
        assert_eq!(Elem::Star.degree(), 0);
        assert_eq!(Elem::bag(vec![a(), a()]).degree(), 2);
        let bb = Elem::bag(vec![Elem::bag(vec![a()]), Elem::empty_bag()]);
        assert_eq!(bb.degree(), 3);
        assert_eq!(Elem::pair(Elem::bag(vec![a()]), b()).degree(), 1);
    }

    #[test]
    fn encoding() {
        let e = Elem::pair(Elem::bag(vec![b(), a()]), Elem::Star);
        assert_eq!(e.encode(), "([a,b],*)");
    }

    #[test]
    fn two_splittings_of_aa() {
        let s = bags::two_splittings(&[a(), a()]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(&(vec![], vec![a(), a()])));
        assert!(s.contains(&(vec![a()], vec![a()])));
        assert!(s.contains(&(vec![a(), a()], vec![])));
    }

    #[test]
    fn partitions_counts() {
        // multiset partitions of [a,a,b]: {aab}, {aa}{b}, {ab}{a}, {a}{a}{b}
        assert_eq!(bags::partitions(&[a(), a(), b()]).len(), 4);
        assert_eq!(bags::partitions(&[]).len(), 1);
        // set partitions of three distinct elements: Bell(3) = 5
        let c = Elem::atom("c");
        assert_eq!(bags::partitions(&[a(), b(), c]).len(), 5);
    }

    #[test]
    fn zips_distinct_matchings() {
        assert_eq!(bags::zips(&[a(), b()], &[a(), b()]).len(), 2);
        assert_eq!(bags::zips(&[a(), a()], &[b(), b()]).len(), 1);
        assert!(bags::zips(&[a()], &[]).is_empty());
    }
}
