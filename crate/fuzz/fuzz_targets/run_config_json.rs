#![no_main]

use libfuzzer_sys::fuzz_target;
use psibound::parse::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = RunConfig::from_json(s) {
        assert!(c.validate().is_ok());
    }
});
