#![no_main]

use libfuzzer_sys::fuzz_target;
use psibound::tables::MinDiscTable;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = MinDiscTable::parse(s) {
        assert!(t.degrees.iter().all(|e| e.n > 0 && e.disc >= 1.0));
        assert!(t.tail.root_disc >= 1.0);
    }
});
