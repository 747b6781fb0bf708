use super::similarity::similarity_chars;
use super::MatchConfig;

/// Words longer than this are never split; the search is cubic in length.
const MAX_SEGMENTABLE_CHARS: usize = 64;

/// Splits a word that lost its spaces into vocabulary words.
///
/// Finds the split with the fewest parts (at most `config.max_segments`) in
/// which every part scores at least `config.subject_threshold` against some
/// vocabulary word. Among splits with the same number of parts the highest
/// mean score wins, then the earliest cut positions. The parts are slices of
/// the input. When nothing qualifies the input comes back unsplit.
pub fn segment_merged<S: AsRef<str>>(word: &str, vocabulary: &[S], config: &MatchConfig) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    if n == 0 || n > MAX_SEGMENTABLE_CHARS || vocabulary.is_empty() {
        return vec![word.to_string()];
    }
    let vocab: Vec<Vec<char>> = vocabulary.iter().map(|w| w.as_ref().chars().collect()).collect();
    let threshold = config.subject_threshold;

    // best[i][j]: best score of chars[i..j] against the vocabulary, if it qualifies
    let mut best: Vec<Vec<Option<f64>>> = vec![vec![None; n + 1]; n + 1];
    for i in 0..n {
        for j in i + 1..=n {
            let part = &chars[i..j];
            let mut top: Option<f64> = None;
            for v in &vocab {
                let longest = part.len().max(v.len());
                // length gap alone already bounds the distance from below
                let gap = part.len().abs_diff(v.len());
                if 1.0 - gap as f64 / (longest as f64) < threshold {
                    continue;
                }
                let s = similarity_chars(part, v);
                if s >= threshold && top.is_none_or(|t| s > t) {
                    top = Some(s);
                }
            }
            best[i][j] = top;
        }
    }

    for parts in 1..=config.max_segments.max(1).min(n) {
        let mut found: Option<(f64, Vec<usize>)> = None;
        let mut cuts = Vec::with_capacity(parts + 1);
        cuts.push(0);
        search(&best, n, parts, &mut cuts, 0.0, &mut found);
        if let Some((_, cuts)) = found {
            return cuts
                .windows(2)
                .map(|w| chars[w[0]..w[1]].iter().collect())
                .collect();
        }
    }
    vec![word.to_string()]
}

fn search(
    best: &[Vec<Option<f64>>],
    n: usize,
    parts: usize,
    cuts: &mut Vec<usize>,
    total: f64,
    found: &mut Option<(f64, Vec<usize>)>,
) {
    let start = *cuts.last().expect("cuts start at 0");
    let remaining = parts + 1 - cuts.len();
    if remaining == 1 {
        if let Some(s) = best[start][n] {
            let mean = (total + s) / parts as f64;
            if found.as_ref().is_none_or(|(m, _)| mean > *m) {
                let mut all = cuts.clone();
                all.push(n);
                *found = Some((mean, all));
            }
        }
        return;
    }
    // leave at least one char for each remaining part
    for end in start + 1..=n - (remaining - 1) {
        if let Some(s) = best[start][end] {
            cuts.push(end);
            search(best, n, parts, cuts, total + s, found);
            cuts.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab() -> Vec<&'static str> {
        vec!["SOCIAL", "SCIENCE", "ENGLISH", "MATHS", "PHYSICAL", "EDUCATION"]
    }

    #[test]
    fn splits_merged_subject() {
        let cfg = MatchConfig::default();
        assert_eq!(segment_merged("SOCIALSCIENCE", &vocab(), &cfg), ["SOCIAL", "SCIENCE"]);
        assert_eq!(
            segment_merged("PHYSICALEDUCATION", &vocab(), &cfg),
            ["PHYSICAL", "EDUCATION"]
        );
    }

    #[test]
    fn whole_word_wins_when_it_matches() {
        assert_eq!(segment_merged("ENGLISH", &vocab(), &MatchConfig::default()), ["ENGLISH"]);
    }

    #[test]
    fn no_split_keeps_word() {
        assert_eq!(segment_merged("XQZPTV", &vocab(), &MatchConfig::default()), ["XQZPTV"]);
        assert_eq!(segment_merged("", &vocab(), &MatchConfig::default()), [""]);
    }

    #[test]
    fn respects_segment_cap() {
        let cfg = MatchConfig {
            max_segments: 2,
            ..MatchConfig::default()
        };
        let word = "MATHSMATHSMATHS";
        assert_eq!(segment_merged(word, &vocab(), &cfg), [word]);
        let cfg3 = MatchConfig::default();
        assert_eq!(segment_merged(word, &vocab(), &cfg3), ["MATHS", "MATHS", "MATHS"]);
    }

    #[test]
    fn tolerates_corrupted_part() {
        let parts = segment_merged("SOCIALSCIENCF", &vocab(), &MatchConfig::default());
        assert_eq!(parts, ["SOCIAL", "SCIENCF"]);
    }
}
