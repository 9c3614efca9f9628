//! Minimal fixed-length bitmap used by the sieves.
//!
//! Both the offset sieve and the plain prime sieve spend almost all of their
//! time striding through one of these, so the representation is a bare
//! `Vec<u64>` with no growth logic.

#[derive(Clone, Debug)]
pub(crate) struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    /// A bitmap of `len` ones.
    pub fn all_set(len: usize) -> Self {
        let n_words = len.div_ceil(64);
        let mut words = vec![!0u64; n_words];
        // Zero the tail so popcounts stay honest.
        let spare = n_words * 64 - len;
        if spare > 0 {
            *words.last_mut().unwrap() >>= spare;
        }
        Bits { words, len }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}
