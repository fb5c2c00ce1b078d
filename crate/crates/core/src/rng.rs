//! MT19937 and the fair-coin mapping built on it.
//!
//! The generator is the standard 32-bit Mersenne Twister with the
//! `1812433253` seeding recurrence, so it agrees word for word with
//! `std::mt19937` and the reference C implementation.

const N: usize = 624;
const M: usize = 397;
const MATRIX_A: u32 = 0x9908_b0df;
const UPPER_MASK: u32 = 0x8000_0000;
const LOWER_MASK: u32 = 0x7fff_ffff;
const INIT_MULTIPLIER: u32 = 1_812_433_253;

/// A source of uniformly distributed 32-bit words.
///
/// Games are generic over this so tests can script exact word sequences.
pub trait WordSource {
    fn next_word(&mut self) -> u32;
}

impl<T: WordSource + ?Sized> WordSource for &mut T {
    fn next_word(&mut self) -> u32 {
        (**self).next_word()
    }
}

#[derive(Clone)]
pub struct Mt19937 {
    state: Box<[u32; N]>,
    index: usize,
}

impl Mt19937 {
    pub fn new(seed: u32) -> Self {
        let mut state = Box::new([0u32; N]);
        state[0] = seed;
        for i in 1..N {
            let prev = state[i - 1];
            state[i] = INIT_MULTIPLIER
                .wrapping_mul(prev ^ (prev >> 30))
                .wrapping_add(i as u32);
        }
        Mt19937 { state, index: N }
    }

    fn twist(&mut self) {
        let mt = &mut *self.state;
        for i in 0..N {
            let y = (mt[i] & UPPER_MASK) | (mt[(i + 1) % N] & LOWER_MASK);
            let mut next = mt[(i + M) % N] ^ (y >> 1);
            if y & 1 != 0 {
                next ^= MATRIX_A;
            }
            mt[i] = next;
        }
        self.index = 0;
    }
}

impl WordSource for Mt19937 {
    #[inline]
    fn next_word(&mut self) -> u32 {
        if self.index >= N {
            self.twist();
        }
        let mut y = self.state[self.index];
        self.index += 1;

        y ^= y >> 11;
        y ^= (y << 7) & 0x9d2c_5680;
        y ^= (y << 15) & 0xefc6_0000;
        y ^ (y >> 18)
    }
}

impl std::fmt::Debug for Mt19937 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mt19937")
            .field("index", &self.index)
            .finish_non_exhaustive()
    }
}

/// One coin face. A tail continues the game, a head ends it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coin {
    Tail,
    Head,
}

/// Draws exactly one word and maps its low bit to a face (1 is a head).
#[inline]
pub fn flip<S: WordSource>(source: &mut S) -> Coin {
    if source.next_word() & 1 == 1 {
        Coin::Head
    } else {
        Coin::Tail
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::WordSource;

    /// Replays a fixed word script and counts how many words were drawn.
    pub struct ScriptedWords {
        words: Vec<u32>,
        pos: usize,
    }

    impl ScriptedWords {
        pub fn new(words: impl Into<Vec<u32>>) -> Self {
            ScriptedWords {
                words: words.into(),
                pos: 0,
            }
        }

        /// Words for a sequence of games with the given tail counts.
        pub fn games(tails: &[u64]) -> Self {
            let mut words = Vec::new();
            for &t in tails {
                words.extend(std::iter::repeat_n(0, t as usize));
                words.push(1);
            }
            Self::new(words)
        }

        pub fn consumed(&self) -> usize {
            self.pos
        }
    }

    impl WordSource for ScriptedWords {
        fn next_word(&mut self) -> u32 {
            let w = self.words[self.pos];
            self.pos += 1;
            w
        }
    }

    /// Wraps another source and counts words.
    pub struct Counting<S> {
        pub inner: S,
        pub count: u64,
    }

    impl<S: WordSource> WordSource for Counting<S> {
        fn next_word(&mut self) -> u32 {
            self.count += 1;
            self.inner.next_word()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::testing::{Counting, ScriptedWords};
    use super::*;

    fn words(seed: u32, n: usize) -> Vec<u32> {
        let mut g = Mt19937::new(seed);
        (0..n).map(|_| g.next_word()).collect()
    }

    // Reference values below come from libstdc++ `std::mt19937`.

    #[test]
    fn known_answer_ten_thousandth_output() {
        let mut g = Mt19937::new(5489);
        let mut last = 0;
        for _ in 0..10_000 {
            last = g.next_word();
        }
        assert_eq!(last, 4_123_659_995);
    }

    #[test]
    fn leading_words_match_reference() {
        assert_eq!(
            words(1_234_567, 8),
            [
                1_018_032_531,
                1_997_911_679,
                32_849_524,
                1_557_424_454,
                85_170_501,
                3_999_700_962,
                1_344_722_528,
                3_988_770_941
            ]
        );
        assert_eq!(
            words(0, 4),
            [2_357_136_044, 2_546_248_239, 3_071_714_933, 3_626_093_760]
        );
        assert_eq!(
            words(1, 4),
            [1_791_095_845, 4_282_876_139, 3_093_770_124, 4_005_303_368]
        );
    }

    #[test]
    fn same_seed_same_stream() {
        assert_eq!(words(1_234_567, 1000), words(1_234_567, 1000));
    }

    #[test]
    fn different_seeds_differ() {
        assert_ne!(words(0, 32), words(1, 32));
    }

    #[test]
    fn flip_uses_low_bit() {
        assert_eq!(flip(&mut ScriptedWords::new([0])), Coin::Tail);
        assert_eq!(flip(&mut ScriptedWords::new([1])), Coin::Head);
        assert_eq!(flip(&mut ScriptedWords::new([0xffff_fffe])), Coin::Tail);
        assert_eq!(flip(&mut ScriptedWords::new([0x8000_0001])), Coin::Head);
    }

    #[test]
    fn flip_consumes_one_word() {
        let mut src = Counting {
            inner: Mt19937::new(42),
            count: 0,
        };
        for k in 1..=1000 {
            flip(&mut src);
            assert_eq!(src.count, k);
        }
    }

    #[test]
    fn million_flips_are_fair() {
        // libstdc++ tallies 500243 heads on the same stream.
        let mut g = Mt19937::new(1_234_567);
        let heads = (0..1_000_000)
            .filter(|_| flip(&mut g) == Coin::Head)
            .count();
        assert_eq!(heads, 500_243);
        let frac = heads as f64 / 1e6;
        assert!((frac - 0.5).abs() <= 0.002, "head fraction {frac}");
    }
}
