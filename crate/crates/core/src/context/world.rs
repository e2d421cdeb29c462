use serde::{Deserialize, Serialize};

use super::{validate_events, validate_locations, Containment, ContextError, EventInstance, LocationRef};
use crate::report::ValidationReport;

/// The static locations and events a stream refers to.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct World {
    #[serde(default)]
    pub locations: Vec<LocationRef>,
    #[serde(default)]
    pub events: Vec<EventInstance>,
}

impl World {
    pub fn validate(&self) -> ValidationReport {
        let mut report = validate_locations(&self.locations);
        report.extend(validate_events(&self.events));
        report
    }

    pub fn containment(&self) -> Result<Containment, ContextError> {
        Containment::from_world(&self.locations, &self.events)
    }
}
