//! Conversions between route selections and computational-basis indices.
//!
//! Route `r` is bit `r` of the basis index (route 0 is the least significant
//! bit). Textual bitstrings are written route-first: the leftmost character is
//! route 0, so `"110"` selects routes 0 and 1.

pub fn index_from_routes(routes: &[usize]) -> u64 {
    routes.iter().fold(0u64, |acc, &r| acc | (1u64 << r))
}

pub fn routes_from_index(index: u64) -> Vec<usize> {
    (0..64).filter(|&r| index >> r & 1 == 1).collect()
}

pub fn index_from_bits(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0u64, |acc, (r, &b)| if b { acc | (1u64 << r) } else { acc })
}

pub fn bits_from_index(index: u64, n: usize) -> Vec<bool> {
    (0..n).map(|r| index >> r & 1 == 1).collect()
}

pub fn format_bitstring(index: u64, n: usize) -> String {
    (0..n)
        .map(|r| if index >> r & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a route-first bitstring such as `"110"`.
pub fn parse_bitstring(text: &str) -> Option<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn route_zero_is_least_significant() {
        assert_eq!(index_from_routes(&[0, 1]), 0b011);
        assert_eq!(format_bitstring(0b011, 3), "110");
        assert_eq!(routes_from_index(0b101), vec![0, 2]);
        assert_eq!(index_from_bits(&parse_bitstring("001").unwrap()), 0b100);
        assert_eq!(bits_from_index(0b100, 3), vec![false, false, true]);
        assert!(parse_bitstring("01x").is_none());
    }
}
