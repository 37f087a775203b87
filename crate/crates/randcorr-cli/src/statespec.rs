//! Parser for the `--state` mini-grammar:
//! `bell`, `ghz:N`, `w:N`, `dicke:N,k`, `bd:c1,c2,c3`, `noisyghz:N,p`,
//! `psitheta:N,theta`, `file:path.json`.

use randcorr::qcore::states::{self, BellDiagonalParams};
use randcorr::qcore::DensityMatrix;

/// A parsed state, keeping the Bell-diagonal parameters around when the
/// spec was `bd:` (so the closed-form engine stays available).
pub struct ParsedState {
    pub rho: DensityMatrix,
    pub bd: Option<BellDiagonalParams>,
}

pub fn parse_state(spec: &str) -> Result<ParsedState, String> {
    let (head, tail) = match spec.split_once(':') {
        Some((h, t)) => (h, t),
        None => (spec, ""),
    };
    let nums = |s: &str, want: usize| -> Result<Vec<f64>, String> {
        let vals: Result<Vec<f64>, _> = s.split(',').map(str::parse::<f64>).collect();
        let vals = vals.map_err(|e| format!("bad number in '{s}': {e}"))?;
        if vals.len() != want {
            return Err(format!("'{head}:' expects {want} parameters, got {}", vals.len()));
        }
        Ok(vals)
    };
    let uint = |v: f64| -> Result<usize, String> {
        if v.fract() != 0.0 || v < 0.0 {
            return Err(format!("{v} is not a non-negative integer"));
        }
        Ok(v as usize)
    };
    let wrap = |r: randcorr::Result<DensityMatrix>| -> Result<ParsedState, String> {
        r.map(|rho| ParsedState { rho, bd: None }).map_err(|e| e.to_string())
    };

    match head {
        "bell" => wrap(states::bell_psi_plus()),
        "ghz" => {
            let v = nums(tail, 1)?;
            wrap(states::ghz(uint(v[0])?))
        }
        "w" => {
            let v = nums(tail, 1)?;
            wrap(states::w_state(uint(v[0])?))
        }
        "dicke" => {
            let v = nums(tail, 2)?;
            wrap(states::dicke_state(uint(v[0])?, uint(v[1])?))
        }
        "bd" => {
            let v = nums(tail, 3)?;
            let params = BellDiagonalParams::new(v[0], v[1], v[2]);
            states::bell_diagonal(&params)
                .map(|rho| ParsedState { rho, bd: Some(params) })
                .map_err(|e| e.to_string())
        }
        "noisyghz" => {
            let v = nums(tail, 2)?;
            wrap(states::noisy_ghz(uint(v[0])?, v[1]))
        }
        "psitheta" => {
            let v = nums(tail, 2)?;
            wrap(states::psi_theta(uint(v[0])?, v[1]))
        }
        "file" => {
            let text = std::fs::read_to_string(tail).map_err(|e| format!("{tail}: {e}"))?;
            let entries: Vec<[f64; 2]> =
                serde_json::from_str(&text).map_err(|e| format!("{tail}: {e}"))?;
            wrap(DensityMatrix::from_flat(&entries))
        }
        other => Err(format!(
            "unknown state spec '{other}'; known: bell, ghz:N, w:N, dicke:N,k, \
             bd:c1,c2,c3, noisyghz:N,p, psitheta:N,theta, file:path.json"
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_states_parse() {
        assert_eq!(parse_state("bell").unwrap().rho.nqubits(), 2);
        assert_eq!(parse_state("ghz:4").unwrap().rho.nqubits(), 4);
        assert_eq!(parse_state("dicke:5,2").unwrap().rho.nqubits(), 5);
        let bd = parse_state("bd:0.5,0.3,-0.2").unwrap();
        assert!(bd.bd.is_some());
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(parse_state("ghz").is_err());
        assert!(parse_state("ghz:2.5").is_err());
        assert!(parse_state("dicke:3").is_err());
        assert!(parse_state("bd:2,0,0").is_err()); // unphysical
        assert!(parse_state("nope:1").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join("randcorr-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.json");
        let rho = parse_state("w:3").unwrap().rho;
        std::fs::write(&path, serde_json::to_string(&rho.to_flat()).unwrap()).unwrap();
        let loaded = parse_state(&format!("file:{}", path.display())).unwrap();
        assert_eq!(loaded.rho.nqubits(), 3);
    }
}
