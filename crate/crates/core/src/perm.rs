//! Permutations on `{0, …, n-1}` and fully enumerated permutation groups.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `x` to `p(q(x))`.
//! Cycle notation is 1-based on input and output, as in `(1,2,3)(4,5)`.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Default hard cap on the number of elements `generate_elements` will enumerate.
pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

/// Orders up to this size get a materialized Cayley table.
pub const PRODUCT_TABLE_LIMIT: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijective(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    /// Parses 1-based cycle notation such as `"(1,2,3)(4,5)"`; `"()"` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let syntax = |column: usize, reason: &str| Error::CycleSyntax {
            column: column + 1,
            reason: reason.to_string(),
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(syntax(pos, "empty input"));
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(syntax(pos, "expected '('"));
            }
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(syntax(pos, "unterminated cycle"));
                }
                if bytes[pos] == b')' {
                    if !cycle.is_empty() {
                        return Err(syntax(pos, "expected point after ','"));
                    }
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(syntax(pos, "expected a point"));
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| syntax(start, "point too large"))?;
                if point == 0 || point > degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if used[point - 1] {
                    return Err(Error::RepeatedPoint(point));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        for w in 0..cycle.len() {
                            images[cycle[w]] = cycle[(w + 1) % cycle.len()] as u32;
                        }
                        cycle.clear();
                        break;
                    }
                    _ => return Err(syntax(pos, "expected ',' or ')'")),
                }
            }
            skip_ws(&mut pos);
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Element lookup keyed by the images of a base (a point sequence whose
/// pointwise stabilizer is trivial), so products can be located without
/// building the full composed permutation.
#[derive(Debug, Clone)]
enum ElementIndex {
    Packed {
        base: Vec<u32>,
        bits: u32,
        map: FxHashMap<u128, u32>,
    },
    Wide {
        base: Vec<u32>,
        map: FxHashMap<Vec<u32>, u32>,
    },
}

impl ElementIndex {
    fn build(degree: usize, elements: &[Permutation]) -> Self {
        let base = choose_base(degree, elements);
        let bits = usize::BITS - degree.max(2).saturating_sub(1).leading_zeros();
        if base.len() as u32 * bits <= 128 {
            let map = elements
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    (
                        pack(base.iter().map(|&b| p.images[b as usize]), bits),
                        i as u32,
                    )
                })
                .collect();
            ElementIndex::Packed { base, bits, map }
        } else {
            let map = elements
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    (
                        base.iter().map(|&b| p.images[b as usize]).collect(),
                        i as u32,
                    )
                })
                .collect();
            ElementIndex::Wide { base, map }
        }
    }

    /// Looks up the element whose base images are `image(b)` for each base point.
    #[inline]
    fn find(&self, image: impl Fn(usize) -> u32) -> Option<usize> {
        match self {
            ElementIndex::Packed { base, bits, map } => map
                .get(&pack(base.iter().map(|&b| image(b as usize)), *bits))
                .map(|&i| i as usize),
            ElementIndex::Wide { base, map } => {
                let key: Vec<u32> = base.iter().map(|&b| image(b as usize)).collect();
                map.get(&key).map(|&i| i as usize)
            }
        }
    }
}

#[inline]
fn pack(images: impl Iterator<Item = u32>, bits: u32) -> u128 {
    images.fold(0u128, |acc, x| (acc << bits) | x as u128)
}

fn choose_base(degree: usize, elements: &[Permutation]) -> Vec<u32> {
    let mut stab: Vec<&Permutation> = elements.iter().filter(|p| !p.is_identity()).collect();
    let mut base = Vec::new();
    while !stab.is_empty() {
        // the first point moved by the fewest-fixing choice keeps bases short
        let point = (0..degree)
            .filter(|&x| stab.iter().any(|p| p.apply(x) != x))
            .min_by_key(|&x| stab.iter().filter(|p| p.apply(x) == x).count())
            .expect("a non-identity element moves some point");
        base.push(point as u32);
        stab.retain(|p| p.apply(point) == point);
    }
    base
}

/// A fully enumerated permutation group. Element 0 is the identity; the
/// remaining elements are in breadth-first order from the generators.
#[derive(Debug, Clone)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<usize>,
    inverses: Vec<u32>,
    index: ElementIndex,
    products: Option<Vec<u16>>,
}

impl GroupTable {
    /// Closure of `generators` under composition, capped at [`DEFAULT_ELEMENT_CAP`].
    pub fn generate(generators: &[Permutation]) -> Result<GroupTable> {
        Self::generate_with_cap(generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(generators: &[Permutation], cap: usize) -> Result<GroupTable> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let cap = cap.min(u16::MAX as usize + 1);

        let identity = Permutation::identity(degree);
        let mut seen: FxHashMap<Permutation, u32> = FxHashMap::default();
        let mut elements = vec![identity.clone()];
        seen.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = elements[i].compose_unchecked(g);
                if !seen.contains_key(&next) {
                    if elements.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(next.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        drop(seen);
        let gen_indices = dedup_generators(generators, &elements);
        Ok(Self::from_elements(degree, elements, gen_indices))
    }

    fn from_elements(degree: usize, elements: Vec<Permutation>, generators: Vec<usize>) -> Self {
        let index = ElementIndex::build(degree, &elements);
        let inverses = elements
            .iter()
            .map(|p| {
                let inv = p.inverse();
                index
                    .find(|b| inv.images[b])
                    .expect("group closed under inverse") as u32
            })
            .collect();
        let mut table = GroupTable {
            degree,
            elements,
            generators,
            inverses,
            index,
            products: None,
        };
        let n = table.order();
        if n <= PRODUCT_TABLE_LIMIT {
            let mut products = vec![0u16; n * n];
            for i in 0..n {
                for j in 0..n {
                    products[i * n + j] = table.compose_lookup(i, j) as u16;
                }
            }
            table.products = Some(products);
        }
        table
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Indices of the generators the table was built from (identity and duplicates dropped).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let i = self.index.find(|b| p.images[b])?;
        (self.elements[i] == *p).then_some(i)
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    /// Index of `elements[i] ∘ elements[j]` (apply `j` first).
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        match &self.products {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.compose_lookup(i, j),
        }
    }

    #[inline]
    fn compose_lookup(&self, i: usize, j: usize) -> usize {
        let (p, q) = (&self.elements[i], &self.elements[j]);
        self.index
            .find(|b| p.images[q.images[b] as usize])
            .expect("group closed under composition")
    }

    /// `g⁻¹ h g`.
    #[inline]
    pub fn conjugate_element(&self, h: usize, g: usize) -> usize {
        self.product(self.inverse(g), self.product(h, g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // a⁻¹ b⁻¹ a b
        let ab = self.product(a, b);
        let ba_inv = self.inverse(self.product(b, a));
        self.product(ba_inv, ab)
    }

    pub fn power(&self, i: usize, mut e: usize) -> usize {
        let mut base = i;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.product(acc, base);
            }
            base = self.product(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest `n ≥ 1` with `g^n = 1`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut n = 1;
        let mut x = i;
        while x != 0 {
            x = self.product(x, i);
            n += 1;
        }
        n
    }

    pub fn has_product_table(&self) -> bool {
        self.products.is_some()
    }
}

fn dedup_generators(generators: &[Permutation], elements: &[Permutation]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for g in generators {
        if g.is_identity() {
            continue;
        }
        let i = elements
            .iter()
            .position(|e| e == g)
            .expect("generator enumerated");
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out
}

/// `generate_elements` under its contract name.
pub fn generate_elements(generators: &[Permutation]) -> Result<GroupTable> {
    GroupTable::generate(generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_applies_right_first() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1,2,3)", 3));
        assert_eq!(a.compose(&Permutation::identity(3)).unwrap(), a);
        let c = p("(1,3,2)", 3);
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        assert_eq!(
            p("(1,2)", 3).compose(&p("(1,2)", 4)),
            Err(Error::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn parse_examples() {
        let c = p("(1,2,3)", 4);
        assert_eq!(c.images(), &[1, 2, 0, 3]);
        assert!(p("()", 5).is_identity());
        let d = p("(1,2)(3,4)", 4);
        assert_eq!(d.images(), &[1, 0, 3, 2]);
        assert_eq!(p(&d.to_string(), 4), d);
        assert_eq!(p(" (1, 2) ( 3 ,4 ) ", 4), d);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse_cycles("(1,2,", 4),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1,5)", 4),
            Err(Error::PointOutOfRange {
                point: 5,
                degree: 4
            })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1,2)(2,3)", 4),
            Err(Error::RepeatedPoint(2))
        ));
        assert!(Permutation::parse_cycles("(0,1)", 4).is_err());
        assert!(Permutation::parse_cycles("1,2", 4).is_err());
        assert!(Permutation::parse_cycles("", 4).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn generate_small_groups() {
        let c8 = GroupTable::generate(&[p("(1,2,3,4,5,6,7,8)", 8)]).unwrap();
        assert_eq!(c8.order(), 8);
        assert_eq!(c8.element_order(c8.generators()[0]), 8);

        let s4 = GroupTable::generate(&[p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(s4.element(0).is_identity());
        assert_eq!(s4.element_order(0), 1);
        let three = s4.index_of(&p("(1,2,3)", 4)).unwrap();
        assert_eq!(s4.element_order(three), 3);
        for i in 0..24 {
            assert_eq!(s4.index_of(s4.element(i)), Some(i));
            assert_eq!(s4.product(i, s4.inverse(i)), 0);
        }
    }

    #[test]
    fn generate_errors() {
        assert_eq!(GroupTable::generate(&[]).unwrap_err(), Error::NoGenerators);
        assert!(matches!(
            GroupTable::generate(&[p("(1,2)", 3), p("(1,2)", 4)]),
            Err(Error::DegreeMismatch(3, 4))
        ));
        let s6 = [p("(1,2)", 6), p("(1,2,3,4,5,6)", 6)];
        assert_eq!(
            GroupTable::generate_with_cap(&s6, 100).unwrap_err(),
            Error::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn on_demand_products_agree_with_composition() {
        // S7 has 5040 elements, above the table limit.
        let s7 = GroupTable::generate(&[p("(1,2)", 7), p("(1,2,3,4,5,6,7)", 7)]).unwrap();
        assert_eq!(s7.order(), 5040);
        assert!(!s7.has_product_table());
        for (i, j) in [(1, 2), (100, 4000), (5039, 17), (2500, 2500)] {
            let q = s7.element(i).compose(s7.element(j)).unwrap();
            assert_eq!(s7.product(i, j), s7.index_of(&q).unwrap());
        }
    }

    #[test]
    fn regenerating_from_all_elements_is_idempotent() {
        let s4 = GroupTable::generate(&[p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        let again = GroupTable::generate(s4.elements()).unwrap();
        assert_eq!(again.order(), 24);
    }
}
