use super::{dlx::DancingLinks, ExactCoverInstance};

/// Default route-count ceiling for callers that run the oracle unconditionally.
pub const ORACLE_LIMIT: usize = 30;

/// Above this many routes `solve_exact` switches from enumeration to DLX.
pub const DLX_THRESHOLD: usize = 20;

/// Every exact cover of `inst`, each as sorted route indices, in
/// lexicographic order.
pub fn solve_exact(inst: &ExactCoverInstance) -> Vec<Vec<usize>> {
    if inst.n_routes() > DLX_THRESHOLD {
        solve_dlx(inst)
    } else {
        solve_exhaustive(inst)
    }
}

/// Visits all `2^n` route subsets in Gray-code order, tracking how many
/// flights are covered exactly once. Cost is `O(2^n * mean route length)`.
pub fn solve_exhaustive(inst: &ExactCoverInstance) -> Vec<Vec<usize>> {
    let n = inst.n_routes();
    let routes = inst.routes();
    let mut count = vec![0u32; inst.n_flights()];
    let mut exact = 0usize;
    let mut mask = 0u64;
    let mut found = Vec::new();

    for k in 1u64..(1u64 << n) {
        let r = k.trailing_zeros() as usize;
        mask ^= 1 << r;
        if mask >> r & 1 == 1 {
            for &f in &routes[r] {
                count[f] += 1;
                match count[f] {
                    1 => exact += 1,
                    2 => exact -= 1,
                    _ => {}
                }
            }
        } else {
            for &f in &routes[r] {
                count[f] -= 1;
                match count[f] {
                    0 => exact -= 1,
                    1 => exact += 1,
                    _ => {}
                }
            }
        }
        if exact == inst.n_flights() {
            found.push(crate::bits::routes_from_index(mask));
        }
    }
    found.sort();
    found
}

/// Algorithm X over dancing links; rows are routes, columns are flights.
pub fn solve_dlx(inst: &ExactCoverInstance) -> Vec<Vec<usize>> {
    let mut found = DancingLinks::new(inst.n_flights(), inst.routes()).solve_all();
    for sol in found.iter_mut() {
        sol.sort_unstable();
    }
    found.sort();
    found
}
