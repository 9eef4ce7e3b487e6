#![no_main]

use libfuzzer_sys::fuzz_target;
use psibound::parse::{profile_from_json, profile_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = profile_from_json(s) {
        // anything accepted must survive a round trip
        let back = profile_from_json(&profile_to_json(&p)).expect("serialized profile parses");
        assert_eq!(back.signature(), p.signature());
        assert!((back.log_disc() - p.log_disc()).abs() <= 1e-9 * p.log_disc().abs().max(1.0));
    }
});
