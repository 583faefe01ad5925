#![no_main]

use genperm::json::parse_matroid;
use genperm::matroid::{beta_inequality, beta_table, signed_beta};
use genperm::SubsetMask;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(m) = parse_matroid(data) else {
        return;
    };
    if m.ground_size() <= 8 {
        assert_eq!(beta_table(&m).get(SubsetMask::EMPTY), signed_beta(&m));
        let _ = beta_inequality(&m);
    }
});
