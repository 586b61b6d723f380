//! Workloads shared by the benchmarks.

use lucky_core::CapacityProfile;

/// Capacity vectors of increasing size exercising repeated spots and gaps.
pub fn capacity_workloads() -> Vec<(&'static str, CapacityProfile)> {
    [
        ("1,1,3,3,3", vec![1, 1, 3, 3, 3]),
        ("2,4,6,8", vec![2, 4, 6, 8]),
        ("1,2,3,4,5,6", vec![1, 2, 3, 4, 5, 6]),
        ("1,1,2,4,4,5,7", vec![1, 1, 2, 4, 4, 5, 7]),
    ]
    .into_iter()
    .map(|(name, u)| (name, CapacityProfile::new(u).expect("workload is valid")))
    .collect()
}
