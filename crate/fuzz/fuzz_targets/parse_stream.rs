#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::context::{classify_pattern, PatternFocus, StreamingContext};
use perscontext::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = io::parse_stream(text) {
        assert_eq!(
            io::parse_stream(&io::stream_to_string(&records)).expect("round trip"),
            records
        );
        let window = StreamingContext::unchecked(records);
        let _ = classify_pattern(&window, PatternFocus::Location);
        let _ = classify_pattern(&window, PatternFocus::Event);
    }
});
