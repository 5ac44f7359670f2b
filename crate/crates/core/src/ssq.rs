//! Simulator sickness questionnaire: responses, class scores and the
//! three-questionnaire test protocol.

use crate::error::{Error, Result};

pub const SYMPTOM_COUNT: usize = 16;
pub const MAX_RATING: u8 = 3;

pub const NAUSEA_WEIGHT: f64 = 9.54;
pub const OCULOMOTOR_WEIGHT: f64 = 7.58;
pub const DISORIENTATION_WEIGHT: f64 = 13.92;
pub const TOTAL_WEIGHT: f64 = 3.74;

pub const SYMPTOMS: [&str; SYMPTOM_COUNT] = [
    "General discomfort",
    "Fatigue",
    "Headache",
    "Eye strain",
    "Difficult focusing",
    "Increased salivation",
    "Sweating",
    "Nausea",
    "Difficulty concentrating",
    "Fullness of head",
    "Blurred vision",
    "Dizzy (eyes open)",
    "Dizzy (eyes closed)",
    "Vertigo",
    "Stomach awareness",
    "Burping",
];

/// Class membership per symptom: `[nausea, oculomotor, disorientation]`.
pub const MEMBERSHIP: [[bool; 3]; SYMPTOM_COUNT] = [
    [true, true, false],  // 1 general discomfort
    [false, true, false], // 2 fatigue
    [false, true, false], // 3 headache
    [false, true, false], // 4 eye strain
    [false, true, true],  // 5 difficult focusing
    [true, false, false], // 6 increased salivation
    [true, false, false], // 7 sweating
    [true, false, true],  // 8 nausea
    [true, true, false],  // 9 difficulty concentrating
    [false, false, true], // 10 fullness of head
    [false, true, true],  // 11 blurred vision
    [false, false, true], // 12 dizzy (eyes open)
    [false, false, true], // 13 dizzy (eyes closed)
    [false, false, true], // 14 vertigo
    [true, false, false], // 15 stomach awareness
    [true, false, false], // 16 burping
];

/// Sixteen ratings in symptom order, each 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SsqResponse {
    ratings: [u8; SYMPTOM_COUNT],
}

impl SsqResponse {
    pub fn new(ratings: [u8; SYMPTOM_COUNT]) -> Result<Self> {
        if let Some(i) = ratings.iter().position(|&r| r > MAX_RATING) {
            return Err(Error::validation(
                format!("symptom {}", i + 1),
                format!("rating {} outside 0..=3", ratings[i]),
            ));
        }
        Ok(SsqResponse { ratings })
    }

    pub fn from_slice(ratings: &[u8]) -> Result<Self> {
        let arr: [u8; SYMPTOM_COUNT] = ratings.try_into().map_err(|_| {
            Error::validation(
                "ratings",
                format!("expected {SYMPTOM_COUNT} ratings, got {}", ratings.len()),
            )
        })?;
        SsqResponse::new(arr)
    }

    pub fn ratings(&self) -> &[u8; SYMPTOM_COUNT] {
        &self.ratings
    }

    /// Raw (unweighted) class sums `[nausea, oculomotor, disorientation]`.
    pub fn raw_class_sums(&self) -> [u32; 3] {
        let mut sums = [0u32; 3];
        for (rating, member) in self.ratings.iter().zip(MEMBERSHIP.iter()) {
            for (sum, &m) in sums.iter_mut().zip(member) {
                if m {
                    *sum += u32::from(*rating);
                }
            }
        }
        sums
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SsqScore {
    pub nausea: f64,
    pub oculomotor: f64,
    pub disorientation: f64,
    pub total: f64,
}

impl SsqScore {
    pub fn delta(&self, baseline: &SsqScore) -> SsqScore {
        SsqScore {
            nausea: self.nausea - baseline.nausea,
            oculomotor: self.oculomotor - baseline.oculomotor,
            disorientation: self.disorientation - baseline.disorientation,
            total: self.total - baseline.total,
        }
    }
}

/// Class scores are raw sums times the class weight; the total is the
/// overlap-counted sum of all three raw class sums times 3.74.
pub fn score_questionnaire(resp: &SsqResponse) -> SsqScore {
    let [n, o, d] = resp.raw_class_sums();
    SsqScore {
        nausea: f64::from(n) * NAUSEA_WEIGHT,
        oculomotor: f64::from(o) * OCULOMOTOR_WEIGHT,
        disorientation: f64::from(d) * DISORIENTATION_WEIGHT,
        total: f64::from(n + o + d) * TOTAL_WEIGHT,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub name: String,
    pub age: u32,
    pub gender: String,
    pub academic_background: String,
}

impl Profile {
    pub fn new(
        name: impl Into<String>,
        age: u32,
        gender: impl Into<String>,
        academic_background: impl Into<String>,
    ) -> Result<Self> {
        if age == 0 {
            return Err(Error::validation("age", "must be positive"));
        }
        Ok(Profile {
            name: name.into(),
            age,
            gender: gender.into(),
            academic_background: academic_background.into(),
        })
    }
}

/// One participant: profile plus the questionnaires before exposure, after
/// the first session and after the second session.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolSession {
    pub profile: Profile,
    pub pre_exposure: SsqResponse,
    pub after_first: SsqResponse,
    pub after_second: SsqResponse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolReport {
    pub profile: Profile,
    pub scores: [SsqScore; 3],
    /// `q2 − q1` and `q3 − q1`.
    pub deltas: [SsqScore; 2],
}

pub fn protocol_report(session: &ProtocolSession) -> ProtocolReport {
    let q1 = score_questionnaire(&session.pre_exposure);
    let q2 = score_questionnaire(&session.after_first);
    let q3 = score_questionnaire(&session.after_second);
    ProtocolReport {
        profile: session.profile.clone(),
        scores: [q1, q2, q3],
        deltas: [q2.delta(&q1), q3.delta(&q1)],
    }
}
