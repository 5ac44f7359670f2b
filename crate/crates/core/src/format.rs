//! Text file formats: scene, trajectory, SSQ response and profile files, plus
//! the fixed-precision number rendering used by every output document.

use std::collections::BTreeSet;
use std::path::Path;

use crate::comfort::TrajectorySample;
use crate::config::parse_key_values;
use crate::error::{Error, Result};
use crate::geometry::{SceneObject, Vec3};
use crate::ssq::{Profile, SsqResponse, MAX_RATING, SYMPTOM_COUNT};

pub const TRAJECTORY_HEADER: [&str; 13] = [
    "t_ms",
    "px",
    "py",
    "pz",
    "fx",
    "fy",
    "fz",
    "ux",
    "uy",
    "uz",
    "fov_deg",
    "user_initiated",
    "frame_time_ms",
];

/// Frame vectors in files may be rounded; anything within this of unit
/// length is renormalized on load.
const FILE_UNIT_TOLERANCE: f64 = 1e-3;

/// Six fixed decimals; negative zero prints as zero.
pub fn fmt_real(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Lines with `#` comments stripped; yields (1-based line, content) for
/// non-blank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

fn parse_f64(tok: &str, what: &str, path: &Path, line: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(path, line, format!("{what}: expected a number, got `{tok}`")))?;
    if !v.is_finite() {
        return Err(Error::parse(path, line, format!("{what}: value must be finite")));
    }
    Ok(v)
}

/// One object per line: `id cx cy cz radius value label...`.
pub fn parse_scene(text: &str, path: &Path) -> Result<Vec<SceneObject>> {
    let mut objects = Vec::new();
    let mut ids = BTreeSet::new();
    for (line, content) in content_lines(text) {
        let mut toks = content.split_whitespace();
        let mut next = |what: &str| {
            toks.next()
                .ok_or_else(|| Error::parse(path, line, format!("missing field `{what}`")))
        };
        let id_tok = next("id")?;
        let id: u32 = id_tok
            .parse()
            .map_err(|_| Error::parse(path, line, format!("id: expected an integer, got `{id_tok}`")))?;
        let cx = parse_f64(next("center_x")?, "center_x", path, line)?;
        let cy = parse_f64(next("center_y")?, "center_y", path, line)?;
        let cz = parse_f64(next("center_z")?, "center_z", path, line)?;
        let radius = parse_f64(next("radius")?, "radius", path, line)?;
        let value = parse_f64(next("value")?, "value", path, line)?;
        next("label")?;
        let label = content.split_whitespace().skip(6).collect::<Vec<_>>().join(" ");
        if !ids.insert(id) {
            return Err(Error::parse(path, line, format!("duplicate object id {id}")));
        }
        let obj = SceneObject::new(id, Vec3::new(cx, cy, cz), radius, value, label).map_err(|e| match e {
            Error::Validation { field, message } => {
                Error::validation(format!("{}:{line} {field}", path.display()), message)
            }
            other => other,
        })?;
        objects.push(obj);
    }
    Ok(objects)
}

pub fn load_scene(path: &Path) -> Result<Vec<SceneObject>> {
    parse_scene(&read_text(path)?, path)
}

fn parse_bool(tok: &str, path: &Path, line: usize) -> Result<bool> {
    match tok {
        "1" | "true" => Ok(true),
        "0" | "false" => Ok(false),
        _ => Err(Error::parse(
            path,
            line,
            format!("user_initiated: expected 0/1/true/false, got `{tok}`"),
        )),
    }
}

/// Header line naming the 13 columns, then one sample per line. Forward and
/// up are renormalized (up is re-orthogonalized against forward).
pub fn parse_trajectory(text: &str, path: &Path) -> Result<Vec<TrajectorySample>> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 0, "empty trajectory file"))?;
    let cols: Vec<&str> = header.split_whitespace().collect();
    if cols != TRAJECTORY_HEADER {
        return Err(Error::parse(
            path,
            hline,
            format!("expected header `{}`", TRAJECTORY_HEADER.join(" ")),
        ));
    }

    let mut samples = Vec::new();
    for (line, content) in lines {
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != TRAJECTORY_HEADER.len() {
            return Err(Error::parse(
                path,
                line,
                format!("expected {} columns, got {}", TRAJECTORY_HEADER.len(), toks.len()),
            ));
        }
        let mut nums = [0.0; 13];
        for (i, tok) in toks.iter().enumerate() {
            if i != 11 {
                nums[i] = parse_f64(tok, TRAJECTORY_HEADER[i], path, line)?;
            }
        }
        let user_initiated = parse_bool(toks[11], path, line)?;
        let invalid = |field: &str, msg: &str| Error::validation(format!("{}:{line} {field}", path.display()), msg);

        let forward = Vec3::new(nums[4], nums[5], nums[6]);
        let up = Vec3::new(nums[7], nums[8], nums[9]);
        if (forward.length() - 1.0).abs() > FILE_UNIT_TOLERANCE {
            return Err(invalid("forward", "must be a unit vector"));
        }
        if (up.length() - 1.0).abs() > FILE_UNIT_TOLERANCE {
            return Err(invalid("up", "must be a unit vector"));
        }
        let forward = forward / forward.length();
        if forward.dot(up).abs() > FILE_UNIT_TOLERANCE {
            return Err(invalid("up", "must be orthogonal to forward"));
        }
        let up = (up - forward * forward.dot(up))
            .try_normalize()
            .ok_or_else(|| invalid("up", "degenerate frame"))?;

        if let Some(prev) = samples.last().map(|s: &TrajectorySample| s.t_ms) {
            if nums[0] <= prev {
                return Err(invalid("t_ms", "timestamps must be strictly increasing"));
            }
        }
        if !(nums[10] > 0.0 && nums[10] < 180.0) {
            return Err(invalid("fov_deg", "must lie in (0, 180)"));
        }
        if nums[12] <= 0.0 {
            return Err(invalid("frame_time_ms", "must be positive"));
        }
        samples.push(TrajectorySample {
            t_ms: nums[0],
            position: Vec3::new(nums[1], nums[2], nums[3]),
            forward,
            up,
            fov_deg: nums[10],
            user_initiated,
            frame_time_ms: nums[12],
        });
    }
    if samples.len() < 3 {
        return Err(Error::parse(
            path,
            0,
            format!("trajectory needs at least 3 samples, got {}", samples.len()),
        ));
    }
    Ok(samples)
}

pub fn load_trajectory(path: &Path) -> Result<Vec<TrajectorySample>> {
    parse_trajectory(&read_text(path)?, path)
}

/// Sixteen whitespace-separated integers in symptom order, spread over any
/// number of lines.
pub fn parse_ssq_response(text: &str, path: &Path) -> Result<SsqResponse> {
    let mut ratings = Vec::with_capacity(SYMPTOM_COUNT);
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        for tok in content.split_whitespace() {
            let symptom = ratings.len() + 1;
            if symptom > SYMPTOM_COUNT {
                return Err(Error::parse(
                    path,
                    line,
                    format!("too many ratings: found a value for symptom {symptom}, expected {SYMPTOM_COUNT}"),
                ));
            }
            let r: u8 = tok.parse().map_err(|_| {
                Error::parse(
                    path,
                    line,
                    format!("symptom {symptom}: expected an integer 0..3, got `{tok}`"),
                )
            })?;
            if r > MAX_RATING {
                return Err(Error::parse(
                    path,
                    line,
                    format!("symptom {symptom}: rating {r} outside 0..3"),
                ));
            }
            ratings.push(r);
        }
    }
    if ratings.len() < SYMPTOM_COUNT {
        let missing = ratings.len() + 1;
        return Err(Error::parse(
            path,
            last_line,
            format!(
                "expected {SYMPTOM_COUNT} ratings, found {} (missing symptom {missing})",
                ratings.len()
            ),
        ));
    }
    SsqResponse::from_slice(&ratings)
}

pub fn load_ssq_response(path: &Path) -> Result<SsqResponse> {
    parse_ssq_response(&read_text(path)?, path)
}

/// `key = value` with exactly the keys name, age, gender and background.
pub fn parse_profile(text: &str, path: &Path) -> Result<Profile> {
    let mut entries = parse_key_values(text, path)?;
    let known = ["name", "age", "gender", "background"];
    if let Some((key, (line, _))) = entries.iter().find(|(k, _)| !known.contains(&k.as_str())) {
        return Err(Error::parse(path, *line, format!("unknown profile key `{key}`")));
    }
    let mut take = |key: &str| {
        entries
            .remove(key)
            .ok_or_else(|| Error::parse(path, 0, format!("missing profile key `{key}`")))
    };
    let (_, name) = take("name")?;
    let (age_line, age) = take("age")?;
    let (_, gender) = take("gender")?;
    let (_, background) = take("background")?;
    let age: u32 = age
        .parse()
        .map_err(|_| Error::parse(path, age_line, format!("age: expected a positive integer, got `{age}`")))?;
    Profile::new(name, age, gender, background)
}

pub fn load_profile(path: &Path) -> Result<Profile> {
    parse_profile(&read_text(path)?, path)
}
