#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(eg) = io::parse_eg(text) {
        let _ = io::parse_eg(&io::to_json_string(&eg)).expect("round trip");
    }
});
