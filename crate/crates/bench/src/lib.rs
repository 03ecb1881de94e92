//! Fixture curves shared by the tripod-core benchmarks.

use std::sync::Arc;

use tripod_core::curves::{FourierCurve, RadialChart, RadialCurve};
use tripod_core::{GeometryKind, SampledCurve, SupportCurve};

pub fn convex_support() -> SupportCurve {
    SupportCurve::from_harmonics(1.0, &[(2, 0.08, 0.0), (3, 0.03, 0.02), (5, 0.004, -0.002)]).expect("convex")
}

pub fn ellipse() -> SampledCurve {
    SampledCurve::new(Arc::new(FourierCurve::ellipse(2.0, 1.0)), GeometryKind::Euclidean).expect("ellipse")
}

pub fn limacon() -> SampledCurve {
    SampledCurve::new(Arc::new(FourierCurve::limacon(1.0, 0.6)), GeometryKind::Euclidean).expect("limacon")
}

pub fn disk_near_circle() -> SampledCurve {
    let m = RadialCurve::circle(RadialChart::Disk, 0.5).with_harmonic(3, 0.015, 0.4);
    SampledCurve::new(Arc::new(m), GeometryKind::HyperbolicDisk).expect("disk curve")
}

pub fn sphere_near_circle() -> SampledCurve {
    let m = RadialCurve::circle(RadialChart::Sphere, 0.7).with_harmonic(2, 0.02, 0.0);
    SampledCurve::new(Arc::new(m), GeometryKind::Spherical).expect("sphere curve")
}
