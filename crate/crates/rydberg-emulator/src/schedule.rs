use serde::{Deserialize, Serialize};

use crate::{DeviceSpec, EmulatorError};

/// One piecewise-constant stretch of a drive: amplitude Ω, detuning δ, and
/// how long to hold them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSegment {
    pub omega: f64,
    pub delta: f64,
    pub duration: f64,
}

/// A validated drive program. Construction checks every segment against the
/// device envelope, so holding a `PulseSchedule` is proof the program is
/// executable; fields stay private to keep it that way.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PulseSchedule {
    segments: Vec<PulseSegment>,
}

impl PulseSchedule {
    pub fn new(segments: Vec<PulseSegment>, spec: &DeviceSpec) -> Result<Self, EmulatorError> {
        if segments.is_empty() {
            return Err(EmulatorError::EmptySchedule);
        }
        let mut total = 0.0;
        for (i, seg) in segments.iter().enumerate() {
            if !seg.omega.is_finite() || seg.omega < 0.0 || seg.omega > spec.max_amp {
                return Err(EmulatorError::AmplitudeOutOfRange {
                    segment: i,
                    omega: seg.omega,
                    max: spec.max_amp,
                });
            }
            if !seg.delta.is_finite() || seg.delta.abs() > spec.max_det {
                return Err(EmulatorError::DetuningOutOfRange {
                    segment: i,
                    delta: seg.delta,
                    max: spec.max_det,
                });
            }
            if !seg.duration.is_finite() || seg.duration <= 0.0 {
                return Err(EmulatorError::NonPositiveDuration { segment: i });
            }
            total += seg.duration;
        }
        if total > spec.max_duration {
            return Err(EmulatorError::DurationBudgetExceeded { total, max: spec.max_duration });
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[PulseSegment] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(omega: f64, delta: f64, duration: f64) -> PulseSegment {
        PulseSegment { omega, delta, duration }
    }

    #[test]
    fn legal_schedules_pass_and_report_duration() {
        let spec = DeviceSpec::default();
        let s = PulseSchedule::new(vec![seg(10.0, 0.0, 1.0), seg(0.0, -20.0, 1.5)], &spec).unwrap();
        assert_eq!(s.segments().len(), 2);
        assert!((s.total_duration() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn every_envelope_violation_is_caught() {
        let spec = DeviceSpec::default();
        assert!(matches!(
            PulseSchedule::new(vec![], &spec),
            Err(EmulatorError::EmptySchedule)
        ));
        assert!(matches!(
            PulseSchedule::new(vec![seg(spec.max_amp * 1.01, 0.0, 0.1)], &spec),
            Err(EmulatorError::AmplitudeOutOfRange { segment: 0, .. })
        ));
        assert!(matches!(
            PulseSchedule::new(vec![seg(-1.0, 0.0, 0.1)], &spec),
            Err(EmulatorError::AmplitudeOutOfRange { segment: 0, .. })
        ));
        assert!(matches!(
            PulseSchedule::new(vec![seg(1.0, spec.max_det + 0.1, 0.1)], &spec),
            Err(EmulatorError::DetuningOutOfRange { segment: 0, .. })
        ));
        assert!(matches!(
            PulseSchedule::new(vec![seg(1.0, 0.0, 0.0)], &spec),
            Err(EmulatorError::NonPositiveDuration { segment: 0 })
        ));
        assert!(matches!(
            PulseSchedule::new(vec![seg(1.0, 0.0, 2.0), seg(1.0, 0.0, 1.5)], &spec),
            Err(EmulatorError::DurationBudgetExceeded { .. })
        ));
    }
}
