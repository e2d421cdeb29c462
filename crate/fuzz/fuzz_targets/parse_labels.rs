#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = io::parse_labels(text) {
        assert_eq!(io::parse_labels(&io::to_json_string(&doc)).expect("round trip"), doc);
    }
});
