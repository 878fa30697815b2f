pub mod exactcore;
pub mod numeric;
pub mod heisenberg;
pub mod septimics;
pub mod apolarity;
pub mod vsp;
pub mod moore;
pub mod degen;
pub mod thetacurves;
