#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::{io, kg};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(etg) = io::parse_etg(text) {
        let _ = kg::validate_etg(&etg);
        let again = io::parse_etg(&io::to_json_string(&etg)).expect("round trip");
        assert_eq!(again, etg);
    }
});
