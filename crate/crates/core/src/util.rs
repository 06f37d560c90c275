/// Walks `x, step(x), step(step(x)), ...` (numbered from 1) and returns the
/// first position where `pred` holds.
///
/// Stops early once the orbit revisits an element (Brent's cycle detection),
/// since every later element has then already been seen; also stops after
/// `max_steps` positions.
pub(crate) fn first_position<T, S, P>(
    start: T,
    mut step: S,
    mut pred: P,
    max_steps: u64,
) -> Option<u64>
where
    T: Copy + Eq,
    S: FnMut(T) -> T,
    P: FnMut(T) -> bool,
{
    let mut hare = start;
    let mut tortoise = start;
    let mut power = 1u64;
    let mut lam = 0u64;
    let mut n = 1u64;
    loop {
        if pred(hare) {
            return Some(n);
        }
        if n >= max_steps {
            return None;
        }
        if lam == power {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = step(hare);
        n += 1;
        lam += 1;
        if hare == tortoise {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_first_hit_or_detects_cycle() {
        // 3^n mod 8 cycles 3,1,3,1 and never hits 0.
        assert_eq!(first_position(3u32, |x| x * 3 % 8, |x| x == 0, 1000), None);
        // 2^n mod 16 reaches 0 at n = 4.
        assert_eq!(
            first_position(2u32, |x| x * 2 % 16, |x| x == 0, 1000),
            Some(4)
        );
        assert_eq!(first_position(2u32, |x| x * 2 % 16, |x| x == 0, 3), None);
        // Long tail before the cycle: x -> x+1 capped at 50.
        assert_eq!(
            first_position(0u32, |x| (x + 1).min(50), |x| x == 50, 1000),
            Some(51)
        );
    }
}
