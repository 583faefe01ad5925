#![no_main]

use genperm::genperm::{equivalence_check, validate_y};
use genperm::json::parse_rep;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    // Small dimensions keep the exhaustive checks cheap.
    let Ok(rep) = parse_rep(data, 6) else {
        return;
    };
    let valid = validate_y(&rep).is_valid();
    assert_eq!(equivalence_check(rep.y()).unwrap(), valid);
});
