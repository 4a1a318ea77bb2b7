//! Two infinite families of squares `(y^2)_F = w w` in Zeckendorf form.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::repr::{fibonacci, repeat_word, to_zeckendorf, word_value, Word};

fn confirm(y: &BigUint, w: &Word) -> Result<()> {
    let square = to_zeckendorf(&(y * y));
    if square != repeat_word(w, 2)? {
        return Err(Error::BadFamily(format!("(y^2)_F for y = {y} is {square}, not {w} twice")));
    }
    Ok(())
}

/// `y = F(4n+3) + F(4n+6) + F(8n+8) + F(8n+11)` with
/// `w = 10000 (1000)^(n-1) 101001001 0^(4n)`.
pub fn gen_fibonacci_family(n: usize) -> Result<(BigUint, Word)> {
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("n must be at least 1")));
    }
    let y = fibonacci(4 * n + 3) + fibonacci(4 * n + 6) + fibonacci(8 * n + 8) + fibonacci(8 * n + 11);
    let bits = format!("10000{}101001001{}", "1000".repeat(n - 1), "0".repeat(4 * n));
    let w = Word::zeckendorf(&bits)?;
    confirm(&y, &w)?;
    Ok((y, w))
}

/// `(y)_F = (100)^(4n+2) 101000` with `w = (100100000000)^n 100100000010`.
pub fn gen_fibonacci_family2(n: usize) -> Result<(BigUint, Word)> {
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("n must be at least 1")));
    }
    let y = word_value(&Word::zeckendorf(&format!("{}101000", "100".repeat(4 * n + 2)))?);
    let w = Word::zeckendorf(&format!("{}100100000010", "100100000000".repeat(n)))?;
    confirm(&y, &w)?;
    Ok((y, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::search_fib_squares;

    #[test]
    fn first_family() {
        let (y, w) = gen_fibonacci_family(1).unwrap();
        assert_eq!(y, BigUint::from(5236u32));
        assert_eq!(w.to_string(), "100001010010010000");
        let (y2, _) = gen_fibonacci_family(2).unwrap();
        assert_eq!(y2, fibonacci(11) + fibonacci(14) + fibonacci(24) + fibonacci(27));
        let small: Vec<u64> = search_fib_squares(1_000_000).into_iter().map(|(y, _)| y).collect();
        assert!(small.contains(&5236));
        assert!(small.contains(&u64::try_from(y2).unwrap()));
        for n in 1..=200 {
            gen_fibonacci_family(n).unwrap();
        }
    }

    #[test]
    fn second_family() {
        let (y, _) = gen_fibonacci_family2(1).unwrap();
        assert_eq!(y, BigUint::from(98210u32));
        assert_eq!(gen_fibonacci_family2(2).unwrap().0, BigUint::from(31_622_994u32));
        for n in 1..=100 {
            gen_fibonacci_family2(n).unwrap();
        }
        assert!(gen_fibonacci_family2(0).is_err());
    }
}
