use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ContextError, Coordinates, FunctionAssignment, LocationRef, ObjectRef, PersonRef};
use crate::report::{FindingKind, ValidationReport};
use crate::time::Timestamp;

/// What can be measured about the observer's surroundings at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveContext {
    pub ts: Timestamp,
    /// The smallest spatial reference context that could be computed.
    pub location: LocationRef,
    pub me: PersonRef,
    pub coo_me: Coordinates,
    pub persons: Vec<(PersonRef, Coordinates)>,
    pub objects: Vec<(ObjectRef, Coordinates)>,
}

impl ObjectiveContext {
    pub fn new(
        ts: Timestamp,
        location: LocationRef,
        me: PersonRef,
        coo_me: Coordinates,
        persons: Vec<(PersonRef, Coordinates)>,
        objects: Vec<(ObjectRef, Coordinates)>,
    ) -> Result<Self, ContextError> {
        let ctx = ObjectiveContext {
            ts,
            location,
            me,
            coo_me,
            persons,
            objects,
        };
        ctx.check()?;
        Ok(ctx)
    }

    /// Exactly one observer, unique object ids, finite coordinates.
    pub fn check(&self) -> Result<(), ContextError> {
        if !self.me.is_me {
            return Err(ContextError::Observer(format!(
                "`{}` is not flagged as the observer",
                self.me.id
            )));
        }
        if let Some((p, _)) = self.persons.iter().find(|(p, _)| p.is_me) {
            return Err(ContextError::Observer(format!("second observer `{}`", p.id)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (o, _) in &self.objects {
            if !seen.insert(o.id.as_str()) {
                return Err(ContextError::Observer(format!("duplicate object id `{}`", o.id)));
            }
        }
        self.coo_me.check()?;
        for (_, c) in &self.persons {
            c.check()?;
        }
        for (_, c) in &self.objects {
            c.check()?;
        }
        Ok(())
    }
}

/// The objective context plus the functions the observer assigns to the
/// persons and objects around them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectiveContext {
    pub objective: ObjectiveContext,
    pub person_functions: BTreeMap<String, Vec<FunctionAssignment>>,
    pub object_functions: BTreeMap<String, Vec<FunctionAssignment>>,
}

impl SubjectiveContext {
    pub fn to_objective(&self) -> ObjectiveContext {
        self.objective.clone()
    }
}

/// Attaches every assignment valid at `obj.ts` to the person or object that
/// holds it.
///
/// Assignments whose holder is not in `obj` (including the observer) are
/// skipped and reported as warnings.
pub fn derive_subjective(
    obj: &ObjectiveContext,
    table: &[FunctionAssignment],
) -> (SubjectiveContext, ValidationReport) {
    let mut report = ValidationReport::new();
    let mut person_functions: BTreeMap<String, Vec<FunctionAssignment>> = BTreeMap::new();
    let mut object_functions: BTreeMap<String, Vec<FunctionAssignment>> = BTreeMap::new();
    for f in table {
        if !f.valid_at(&obj.ts) {
            continue;
        }
        if obj.persons.iter().any(|(p, _)| p.id == f.holder) {
            person_functions.entry(f.holder.clone()).or_default().push(f.clone());
        } else if obj.objects.iter().any(|(o, _)| o.id == f.holder) {
            object_functions.entry(f.holder.clone()).or_default().push(f.clone());
        } else {
            report.push(
                FindingKind::Warning,
                &f.holder,
                format!("{f} ignored: holder is not a person or object of this context"),
            );
        }
    }
    let subjective = SubjectiveContext {
        objective: obj.clone(),
        person_functions,
        object_functions,
    };
    (subjective, report)
}
