//! Plain-text rate profiles: the first line holds `N K`, followed by the `K`
//! information indices in increasing order, separated by any whitespace.

use std::fs;
use std::path::Path;

use pac_core::RateProfile;

use crate::error::{Result, SimError};

pub fn parse_profile(text: &str) -> Result<RateProfile> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| SimError::param(format!("profile: `{t}` is not a non-negative integer")))
    });
    let mut header = || tokens.next().unwrap_or_else(|| Err(SimError::param("profile: missing `N K` header")));
    let n = header()?;
    let k = header()?;
    let info: Vec<usize> = tokens.collect::<Result<_>>()?;
    if info.len() != k {
        return Err(SimError::param(format!(
            "profile: header announces {k} information indices, found {}",
            info.len()
        )));
    }
    if let Some(w) = info.windows(2).find(|w| w[0] >= w[1]) {
        return Err(SimError::param(format!(
            "profile: indices must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(RateProfile::from_info_set(n, &info)?)
}

pub fn format_profile(profile: &RateProfile) -> String {
    let indices: Vec<String> = profile.info_indices().iter().map(|i| i.to_string()).collect();
    format!("{} {}\n{}\n", profile.len(), profile.info_len(), indices.join(" "))
}

pub fn read_profile(path: &Path) -> Result<RateProfile> {
    let text = fs::read_to_string(path).map_err(|source| SimError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_profile(&text)
}

pub fn write_profile(path: &Path, profile: &RateProfile) -> Result<()> {
    fs::write(path, format_profile(profile)).map_err(|source| SimError::Io {
        path: path.to_owned(),
        source,
    })
}
