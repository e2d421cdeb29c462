#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::io;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = io::parse_config(text) {
        assert!(config.window_s() > 0);
        assert_eq!(
            io::parse_config(&io::to_json_string(&config)).expect("round trip"),
            config
        );
    }
});
