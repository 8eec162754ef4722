mod battery;
mod elations;
mod ideals;
mod noniso;

pub use battery::{proposition_battery, Outcome, StructureReport, NORMAL_SCAN_MAX_ORDER};
pub use elations::{
    classify, elations_in_group, full_axial_elations, AxialElations, ElationCensus, Perspectivity,
    AXIAL_MAX_ORDER,
};
pub use ideals::ideal_checks;
pub use noniso::{noniso_certificate, NonIsoCertificate};
