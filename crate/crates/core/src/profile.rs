//! Profiles of rational judgment sets, support counts, the majoritarian set,
//! majority-consistency, and the Hamming and geodesic metrics.

use std::collections::VecDeque;
use std::path::Path;
use std::sync::Arc;

use crate::agenda::{Agenda, JudgmentSet, Sign};
use crate::error::{Error, Result};

/// An ordered, finite sequence of complete rational judgment sets over one
/// agenda.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    agenda: Arc<Agenda>,
    voters: Vec<JudgmentSet>,
}

impl Profile {
    pub fn new(agenda: Arc<Agenda>, voters: Vec<JudgmentSet>) -> Result<Profile> {
        if voters.is_empty() {
            return Err(Error::InvalidProfile("profile has no voters".into()));
        }
        for (index, j) in voters.iter().enumerate() {
            if j.len() != agenda.issue_count() || !agenda.is_rational(j) {
                return Err(Error::IrrationalVoter { index });
            }
        }
        Ok(Profile { agenda, voters })
    }

    pub fn agenda(&self) -> &Agenda {
        &self.agenda
    }

    pub fn agenda_arc(&self) -> &Arc<Agenda> {
        &self.agenda
    }

    pub fn voter_count(&self) -> usize {
        self.voters.len()
    }

    pub fn voters(&self) -> &[JudgmentSet] {
        &self.voters
    }

    pub fn voter(&self, index: usize) -> Result<&JudgmentSet> {
        self.voters
            .get(index)
            .ok_or_else(|| Error::InvalidProfile(format!("no voter with index {index}")))
    }

    /// Replace one voter's judgment set; the new set must be rational.
    pub fn with_voter(&self, index: usize, j: JudgmentSet) -> Result<Profile> {
        if index >= self.voters.len() {
            return Err(Error::InvalidProfile(format!("no voter with index {index}")));
        }
        let mut voters = self.voters.clone();
        voters[index] = j;
        Profile::new(self.agenda.clone(), voters)
    }

    /// N(P, φ): the number of voters whose set contains the element.
    pub fn support_count(&self, issue: usize, sign: Sign) -> Result<usize> {
        if issue >= self.agenda.issue_count() {
            return Err(Error::IssueOutOfRange {
                index: issue,
                issues: self.agenda.issue_count(),
            });
        }
        Ok(self
            .voters
            .iter()
            .filter(|j| j.sign(issue) == Some(sign))
            .count())
    }

    /// Per-issue `(accepting, rejecting)` counts.
    pub fn support_table(&self) -> Vec<(usize, usize)> {
        (0..self.agenda.issue_count())
            .map(|i| {
                let plus = self
                    .voters
                    .iter()
                    .filter(|j| j.sign(i) == Some(Sign::Plus))
                    .count();
                (plus, self.voters.len() - plus)
            })
            .collect()
    }

    /// m(P): the elements supported by a strict majority. With an even
    /// number of voters an issue may come out undecided.
    pub fn majoritarian_set(&self) -> JudgmentSet {
        let n = self.voters.len();
        let signs = self
            .support_table()
            .into_iter()
            .map(|(plus, minus)| {
                if 2 * plus > n {
                    Some(Sign::Plus)
                } else if 2 * minus > n {
                    Some(Sign::Minus)
                } else {
                    None
                }
            })
            .collect();
        JudgmentSet::from_signs(signs)
    }

    pub fn is_majority_consistent(&self) -> bool {
        let m = self.majoritarian_set();
        self.agenda
            .is_consistent(&m)
            .expect("majoritarian set is sized to the agenda")
    }

    /// Concatenation of two profiles over the same agenda (disjoint
    /// electorates).
    pub fn concat(&self, other: &Profile) -> Result<Profile> {
        if *self.agenda != *other.agenda {
            return Err(Error::InvalidProfile(
                "profiles range over different agendas".into(),
            ));
        }
        let mut voters = self.voters.clone();
        voters.extend(other.voters.iter().cloned());
        Profile::new(self.agenda.clone(), voters)
    }

    /// kP: the profile repeated `k` times.
    pub fn replicate(&self, k: usize) -> Result<Profile> {
        if k == 0 {
            return Err(Error::InvalidProfile("cannot replicate a profile 0 times".into()));
        }
        let mut voters = Vec::with_capacity(self.voters.len() * k);
        for _ in 0..k {
            voters.extend(self.voters.iter().cloned());
        }
        Profile::new(self.agenda.clone(), voters)
    }

    /// Subprofile keeping the voters whose indices are listed.
    pub fn subprofile(&self, keep: &[usize]) -> Result<Profile> {
        let voters = keep
            .iter()
            .map(|&i| self.voter(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Profile::new(self.agenda.clone(), voters)
    }
}

/// d_H: the number of issues on which two complete sets disagree.
pub fn hamming(a: &JudgmentSet, b: &JudgmentSet) -> Result<usize> {
    if !a.is_complete() || !b.is_complete() {
        return Err(Error::IncompleteJudgmentSet);
    }
    if a.len() != b.len() {
        return Err(Error::InvalidJudgmentSet(
            "judgment sets have different lengths".into(),
        ));
    }
    Ok(a.disagreements(b))
}

/// D_H(P, P') = Σ_i d_H(J_i, J'_i) over aligned voters.
pub fn hamming_profiles(p: &Profile, q: &Profile) -> Result<usize> {
    if p.voter_count() != q.voter_count() {
        return Err(Error::InvalidProfile(
            "profiles have different voter counts".into(),
        ));
    }
    let mut total = 0;
    for (a, b) in p.voters().iter().zip(q.voters()) {
        total += hamming(a, b)?;
    }
    Ok(total)
}

/// d_H(J, P) = Σ_i d_H(J, J_i).
pub fn hamming_set_profile(j: &JudgmentSet, p: &Profile) -> Result<usize> {
    let mut total = 0;
    for voter in p.voters() {
        total += hamming(j, voter)?;
    }
    Ok(total)
}

/// All-pairs geodesic distances over the rational judgment sets of an
/// agenda, cached on first use.
#[derive(Debug)]
pub struct GeodesicTable {
    dist: Vec<Vec<Option<u32>>>,
    connected: bool,
}

impl GeodesicTable {
    fn build(agenda: &Agenda) -> GeodesicTable {
        let sets = agenda.rational_sets();
        let n = sets.len();
        // Edge {J', J''} iff no third rational set J extends their shared
        // elements (J' ∩ J'' ⊂ J in the formula-set view).
        let mut adj = vec![Vec::new(); n];
        for x in 0..n {
            for y in x + 1..n {
                let common: Vec<(usize, Sign)> = sets[x]
                    .elements()
                    .filter(|&(i, sign)| sets[y].sign(i) == Some(sign))
                    .collect();
                let blocked = (0..n).any(|z| {
                    z != x
                        && z != y
                        && common.iter().all(|&(i, sign)| sets[z].sign(i) == Some(sign))
                });
                if !blocked {
                    adj[x].push(y);
                    adj[y].push(x);
                }
            }
        }
        let mut dist = vec![vec![None; n]; n];
        let mut connected = true;
        for start in 0..n {
            let row = &mut dist[start];
            row[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let du = row[u].expect("queued vertices have distances");
                for &v in &adj[u] {
                    if row[v].is_none() {
                        row[v] = Some(du + 1);
                        queue.push_back(v);
                    }
                }
            }
            if row.iter().any(Option::is_none) {
                connected = false;
            }
        }
        GeodesicTable { dist, connected }
    }
}

fn geodesic_table(agenda: &Agenda) -> &GeodesicTable {
    agenda.geodesic.get_or_init(|| GeodesicTable::build(agenda))
}

/// d_G: shortest-path distance in the betweenness graph over the rational
/// judgment sets. Errors if either set is not rational or the graph is
/// disconnected between them.
pub fn geodesic_distance(agenda: &Agenda, a: &JudgmentSet, b: &JudgmentSet) -> Result<u32> {
    let ia = agenda.rational_index(a).ok_or(Error::NotRational)?;
    let ib = agenda.rational_index(b).ok_or(Error::NotRational)?;
    geodesic_table(agenda).dist[ia][ib].ok_or(Error::Disconnected)
}

/// d_G by rational-set index, for callers scanning the whole table.
pub fn geodesic_distance_by_index(agenda: &Agenda, a: usize, b: usize) -> Result<u32> {
    geodesic_table(agenda).dist[a][b].ok_or(Error::Disconnected)
}

/// Whether the betweenness graph over the rational sets is connected.
pub fn geodesic_connected(agenda: &Agenda) -> bool {
    geodesic_table(agenda).connected
}

/// Parse profile rows over a known agenda. Rows are `+`/`-` sign vectors
/// with an optional `xK` multiplicity suffix; blank lines and `#` comments
/// are ignored, as is a leading `agenda:` header.
pub fn parse_profile_rows(agenda: Arc<Agenda>, text: &str) -> Result<Profile> {
    let mut voters = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("agenda:") {
            continue;
        }
        let (row, count) = match line.rsplit_once('x') {
            Some((prefix, suffix)) if suffix.chars().all(|c| c.is_ascii_digit()) && !suffix.is_empty() => {
                let count: usize = suffix.parse().map_err(|_| {
                    Error::InvalidProfile(format!("bad multiplicity in `{line}`"))
                })?;
                (prefix.trim(), count)
            }
            _ => (line, 1),
        };
        if count == 0 {
            return Err(Error::InvalidProfile(format!(
                "zero multiplicity in `{line}`"
            )));
        }
        let j = JudgmentSet::parse(row)?;
        if !j.is_complete() {
            return Err(Error::InvalidProfile(format!(
                "voter row `{row}` is not complete"
            )));
        }
        for _ in 0..count {
            voters.push(j.clone());
        }
    }
    Profile::new(agenda, voters)
}

/// Load a profile file whose `agenda:` header names an agenda file resolved
/// relative to the profile's directory.
pub fn load_profile(path: &Path) -> Result<Profile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading profile file `{}`", path.display()), e))?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| l.starts_with("agenda:"))
        .ok_or_else(|| {
            Error::InvalidProfile(format!(
                "profile file `{}` has no `agenda:` header",
                path.display()
            ))
        })?;
    let agenda_name = header["agenda:".len()..].trim();
    let agenda_path = path
        .parent()
        .map(|dir| dir.join(agenda_name))
        .unwrap_or_else(|| agenda_name.into());
    let agenda_text = std::fs::read_to_string(&agenda_path).map_err(|e| {
        Error::io(format!("reading agenda file `{}`", agenda_path.display()), e)
    })?;
    let agenda = crate::agenda::parse_agenda(&agenda_text)?;
    parse_profile_rows(agenda, &text)
}
