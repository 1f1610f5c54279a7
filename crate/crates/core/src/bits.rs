use std::cmp::Ordering;

/// Fixed-width membership mask over the element indices of one group table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mask {
    words: Box<[u64]>,
}

impl Mask {
    pub fn empty(len: usize) -> Self {
        Mask {
            words: vec![0u64; len.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Self::empty(len);
        for i in 0..len {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Mask) -> Mask {
        Mask {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

impl Ord for Mask {
    /// Lexicographic order of the sorted index lists: at the first index where
    /// the masks differ, the mask containing it sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            if a != b {
                let low = (a ^ b).trailing_zeros();
                return if a >> low & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.words.len().cmp(&other.words.len())
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Mask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(len: usize, items: &[usize]) -> Mask {
        let mut m = Mask::empty(len);
        for &i in items {
            m.insert(i);
        }
        m
    }

    #[test]
    fn order_matches_sorted_lists() {
        let cases: [(&[usize], &[usize]); 4] = [
            (&[0, 1], &[0, 2]),
            (&[0, 70], &[0, 71]),
            (&[0, 5, 9], &[0, 6]),
            (&[3], &[64, 65]),
        ];
        for (a, b) in cases {
            assert_eq!(mask(130, a).cmp(&mask(130, b)), a.cmp(b));
        }
    }

    #[test]
    fn set_operations() {
        let a = mask(100, &[0, 3, 64, 99]);
        let b = mask(100, &[0, 64]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersect(&b), b);
        assert_eq!(a.count(), 4);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3, 64, 99]);
        assert_eq!(Mask::full(70).count(), 70);
    }
}
