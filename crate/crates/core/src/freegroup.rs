//! Words in the rank-2 free group F2 = <a, b>.
//!
//! A letter is stored as an `i8`: a = 1, a⁻¹ = -1, b = 2, b⁻¹ = -2, so that
//! inversion of a letter is numeric negation.  Words serialize as ASCII over
//! {a, A, b, B} with uppercase meaning inverse; the identity is the empty
//! string.

use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Generator `a` as a letter code.
pub const LETTER_A: i8 = 1;
/// Generator `b` as a letter code.
pub const LETTER_B: i8 = 2;

/// A freely reduced word in F2.  Construction always reduces, so adjacent
/// inverse letters never survive in a `Word`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i8>);

impl Word {
    /// The identity element.
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// The generator `a`.
    pub fn gen_a() -> Self {
        Word(vec![LETTER_A])
    }

    /// The generator `b`.
    pub fn gen_b() -> Self {
        Word(vec![LETTER_B])
    }

    /// Builds a word from raw letter codes, freely reducing as it goes.
    /// Codes must be ±1 or ±2.
    pub fn from_letters<I: IntoIterator<Item = i8>>(letters: I) -> Self {
        let mut stack: Vec<i8> = Vec::new();
        for l in letters {
            debug_assert!(matches!(l, -2 | -1 | 1 | 2), "bad letter code {l}");
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    /// Letter codes of the reduced word.
    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    /// Word length |w| after free reduction.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the identity.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut stack = self.0.clone();
        for &l in &other.0 {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    /// The inverse word (reverse and negate each letter).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// Exponent sums (n_a, n_b) of the word — its image in Z², the
    /// abelianization of F2.
    pub fn abelianize(&self) -> (i64, i64) {
        let mut na = 0i64;
        let mut nb = 0i64;
        for &l in &self.0 {
            match l {
                LETTER_A => na += 1,
                l if l == -LETTER_A => na -= 1,
                LETTER_B => nb += 1,
                _ => nb -= 1,
            }
        }
        (na, nb)
    }

    /// True when the reduced word reads the same forwards and backwards.
    /// For a reduced word this is exactly the palindrome condition
    /// w(a,b) = reverse(w)(a,b).
    pub fn is_palindrome(&self) -> bool {
        let n = self.0.len();
        (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    /// Cyclic reduction: returns (core, conjugator) with
    /// `self = conjugator · core · conjugator⁻¹`, where `core` is cyclically
    /// reduced (its first and last letters are not mutually inverse).
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == -self.0[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        (Word(self.0[lo..hi].to_vec()), Word(self.0[..lo].to_vec()))
    }

    /// True when the word is already cyclically reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != -self.0[self.0.len() - 1]
    }

    /// Cyclically reduced length ℓ(w): the length of the cyclic core.
    pub fn cyclic_len(&self) -> usize {
        self.cyclic_reduce().0.len()
    }

    /// Substitutes words for the two generators: a ↦ `img_a`, b ↦ `img_b`
    /// (inverses map to inverses), then freely reduces.
    pub fn substitute(&self, img_a: &Word, img_b: &Word) -> Word {
        let inv_a = img_a.inverse();
        let inv_b = img_b.inverse();
        let mut out = Word::identity();
        for &l in &self.0 {
            let piece = match l {
                LETTER_A => img_a,
                l if l == -LETTER_A => &inv_a,
                LETTER_B => img_b,
                _ => &inv_b,
            };
            out = out.concat(piece);
        }
        out
    }

    /// True when `self` and `other` represent the same unoriented conjugacy
    /// class, i.e. the cyclic core of one is a rotation of the cyclic core of
    /// the other or of its inverse.
    pub fn same_unoriented_class(&self, other: &Word) -> bool {
        let (u, _) = self.cyclic_reduce();
        let (v, _) = other.cyclic_reduce();
        fn is_rotation(u: &[i8], v: &[i8]) -> bool {
            if u.len() != v.len() {
                return false;
            }
            if u.is_empty() {
                return true;
            }
            let doubled: Vec<i8> = [v, v].concat();
            doubled.windows(u.len()).any(|w| w == u)
        }
        is_rotation(u.letters(), v.letters()) || is_rotation(u.letters(), v.inverse().letters())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            let c = match l {
                LETTER_A => 'a',
                l if l == -LETTER_A => 'A',
                LETTER_B => 'b',
                _ => 'B',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(match c {
                'a' => LETTER_A,
                'A' => -LETTER_A,
                'b' => LETTER_B,
                'B' => -LETTER_B,
                other => return Err(Error::BadWordLetter(other)),
            });
        }
        Ok(Word::from_letters(letters))
    }
}

/// A window of group elements marching along the axis of a cyclically reduced
/// word.  Element `i` (for i in [-radius, radius]) is the prefix of length i
/// of the bi-infinite word ··· w w w ···, so consecutive elements differ by a
/// single letter and the word metric between entries i and j is |i - j|.
#[derive(Clone, Debug)]
pub struct AxisPath {
    /// The cyclically reduced base word.
    pub base: Word,
    /// Window elements g_{-radius}, …, g_0 = 1, …, g_{radius}.
    pub window: Vec<Word>,
}

impl AxisPath {
    /// Index offset of g_0 inside `window`.
    pub fn center(&self) -> usize {
        (self.window.len() - 1) / 2
    }
}

/// Builds the axis window of radius `radius` for a nonempty cyclically
/// reduced word.  Every returned element is reduced as written (prefixes of
/// powers of a cyclically reduced word admit no cancellation).
pub fn axis_window(base: &Word, radius: usize) -> Result<AxisPath> {
    if base.is_empty() {
        return Err(Error::EmptyWord("axis_window"));
    }
    if !base.is_cyclically_reduced() {
        return Err(Error::EmptyWord("axis_window: base must be cyclically reduced"));
    }
    let letters = base.letters();
    let n = letters.len() as i64;
    let letter_at = |pos: i64| -> i8 { letters[pos.rem_euclid(n) as usize] };

    let mut window = vec![Word::identity(); 2 * radius + 1];
    // Forward: g_{i+1} = g_i · (letter at position i).
    let mut fwd: Vec<i8> = Vec::with_capacity(radius);
    for i in 0..radius as i64 {
        fwd.push(letter_at(i));
        window[radius + 1 + i as usize] = Word(fwd.clone());
    }
    // Backward: g_{-i-1} = g_{-i} · (letter at position -i-1)⁻¹.
    let mut bwd: Vec<i8> = Vec::with_capacity(radius);
    for i in 0..radius as i64 {
        bwd.push(-letter_at(-i - 1));
        window[radius - 1 - i as usize] = Word(bwd.clone());
    }
    Ok(AxisPath { base: base.clone(), window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("abBA"), Word::identity());
        assert_eq!(w("aA"), Word::identity());
        assert_eq!(w("abBa").to_string(), "aa");
        assert_eq!(w("aabAB").to_string(), "aabAB");
        assert_eq!(Word::identity().to_string(), "");
    }

    #[test]
    fn parse_rejects_bad_letters() {
        assert_eq!("axb".parse::<Word>(), Err(Error::BadWordLetter('x')));
    }

    #[test]
    fn inverse_and_concat() {
        let u = w("aabab");
        assert_eq!(u.concat(&u.inverse()), Word::identity());
        assert_eq!(u.inverse().to_string(), "BABAA");
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(w("aabab").abelianize(), (3, 2));
        assert_eq!(w("aabAB").abelianize(), (1, 0));
        assert_eq!(w("AAb").abelianize(), (-2, 1));
        assert_eq!(Word::identity().abelianize(), (0, 0));
    }

    #[test]
    fn palindrome_examples() {
        assert!(w("aba").is_palindrome());
        assert!(w("bab").is_palindrome());
        assert!(w("AbA").is_palindrome());
        assert!(!w("ab").is_palindrome());
        assert!(Word::identity().is_palindrome());
        assert!(w("a").is_palindrome());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("Babab").cyclic_reduce();
        assert_eq!(core.to_string(), "aba");
        assert_eq!(conj.to_string(), "B");
        // Conjugation identity: w = conj · core · conj⁻¹.
        let back = conj.concat(&core).concat(&conj.inverse());
        assert_eq!(back, w("Babab"));

        let (core, conj) = w("aabaabab").cyclic_reduce();
        assert_eq!(core.to_string(), "aabaabab");
        assert!(conj.is_empty());

        assert_eq!(w("aba").cyclic_len(), 3);
        assert_eq!(w("Bab").cyclic_len(), 1);
    }

    #[test]
    fn substitute_examples() {
        // a ↦ b, b ↦ b⁻¹a⁻¹ sends ab to b·b⁻¹a⁻¹ = a⁻¹.
        let img = w("ab").substitute(&w("b"), &w("BA"));
        assert_eq!(img.to_string(), "A");
    }

    #[test]
    fn unoriented_class_comparison() {
        assert!(w("aab").same_unoriented_class(&w("aba")));
        assert!(w("aab").same_unoriented_class(&w("BAA").inverse().inverse())); // (aab)⁻¹ rotated
        assert!(w("ab").same_unoriented_class(&w("BA")));
        assert!(!w("ab").same_unoriented_class(&w("aab")));
        // Conjugates are recognized through cyclic reduction, and the class
        // is closed under inversion.
        assert!(w("Babab").same_unoriented_class(&w("aba")));
        assert!(w("Babab").same_unoriented_class(&w("aab").inverse()));
        assert!(!w("Babab").same_unoriented_class(&w("bab")));
    }

    #[test]
    fn axis_window_example() {
        let base = w("aab");
        let path = axis_window(&base, 3).unwrap();
        let c = path.center();
        assert_eq!(path.window[c], Word::identity());
        assert_eq!(path.window[c + 1].to_string(), "a");
        assert_eq!(path.window[c + 2].to_string(), "aa");
        assert_eq!(path.window[c + 3].to_string(), "aab");
        assert_eq!(path.window[c - 1].to_string(), "B");
        assert_eq!(path.window[c - 2].to_string(), "BA");
        assert_eq!(path.window[c - 3].to_string(), "BAA");
        // Neighboring elements differ by one letter of the cycled base.
        for i in 0..path.window.len() - 1 {
            let step = path.window[i].inverse().concat(&path.window[i + 1]);
            assert_eq!(step.len(), 1);
        }
    }

    #[test]
    fn axis_window_rejects_bad_bases() {
        assert!(axis_window(&Word::identity(), 2).is_err());
        assert!(axis_window(&w("aBA"), 2).is_err()); // not cyclically reduced
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        /// Free reduction is idempotent and never lengthens a word.
        #[test]
        fn reduce_idempotent(raw in proptest::collection::vec(
            proptest::sample::select(vec![1i8, -1, 2, -2]), 0..40))
        {
            let once = Word::from_letters(raw.iter().copied());
            let twice = Word::from_letters(once.letters().iter().copied());
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.len() <= raw.len());
            // No adjacent inverse pair survives.
            prop_assert!(once.letters().windows(2).all(|p| p[0] != -p[1]));
        }

        /// Abelianization is a homomorphism: ab(uv) = ab(u) + ab(v).
        #[test]
        fn abelianize_homomorphism(
            u_raw in proptest::collection::vec(proptest::sample::select(vec![1i8, -1, 2, -2]), 0..30),
            v_raw in proptest::collection::vec(proptest::sample::select(vec![1i8, -1, 2, -2]), 0..30))
        {
            let u = Word::from_letters(u_raw);
            let v = Word::from_letters(v_raw);
            let (ua, ub) = u.abelianize();
            let (va, vb) = v.abelianize();
            prop_assert_eq!(u.concat(&v).abelianize(), (ua + va, ub + vb));
        }

        /// Cyclic reduction restores the original word by conjugation, and the
        /// core is cyclically reduced.
        #[test]
        fn cyclic_reduce_is_conjugation(raw in proptest::collection::vec(
            proptest::sample::select(vec![1i8, -1, 2, -2]), 0..40))
        {
            let word = Word::from_letters(raw);
            let (core, conj) = word.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert_eq!(conj.concat(&core).concat(&conj.inverse()), word);
        }

        /// String round-trip.
        #[test]
        fn display_parse_roundtrip(raw in proptest::collection::vec(
            proptest::sample::select(vec![1i8, -1, 2, -2]), 0..40))
        {
            let word = Word::from_letters(raw);
            let back: Word = word.to_string().parse().unwrap();
            prop_assert_eq!(back, word);
        }
    }
}
