#![no_main]

use libfuzzer_sys::fuzz_target;
use perscontext::hierarchy::{self, Hierarchy};
use perscontext::io;
use perscontext::labels::LabelSpace;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = io::parse_hierarchy(text) else { return };
    let Ok(h) = Hierarchy::try_from(doc) else { return };
    let _ = hierarchy::validate_hierarchy(&h);
    let _ = hierarchy::to_dot(&h);
    if let Ok(reduced) = hierarchy::transitive_reduction(&h) {
        assert_eq!(reduced.reachable_pairs(), h.reachable_pairs());
        let _ = LabelSpace::new(&reduced);
    }
});
