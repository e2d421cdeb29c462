#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::io;
use perscontext::kg::Eg;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(script) = io::parse_scenario(text) {
        let _ = script.check(&Eg::default());
    }
});
