#![no_main]

use genperm::functionals::{combine_symmetric, decompose_symmetric};
use genperm::json::parse_symmetric;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(phi) = parse_symmetric(data, 64) else {
        return;
    };
    let c = decompose_symmetric(&phi).unwrap();
    assert_eq!(combine_symmetric(phi.d(), &c).unwrap(), phi);
});
