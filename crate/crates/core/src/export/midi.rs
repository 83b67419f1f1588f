//! Standard MIDI file writer: format 0, one track, 480 ticks per quarter.

use thiserror::Error;

use crate::music::PitchClass;
use crate::score::Score;

pub const DIVISION: u16 = 480;
pub const VELOCITY: u8 = 80;
pub const DEFAULT_OCTAVE: i32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MidiError {
    #[error("{pitch} in octave {octave} is outside the MIDI note range")]
    OutOfRange { pitch: String, octave: i32 },
}

/// Note number with C4 = 60.
fn note_number(p: PitchClass, octave: i32) -> Result<u8, MidiError> {
    let n = 12 * (octave + 1) + p.value() as i32;
    u8::try_from(n)
        .ok()
        .filter(|&n| n <= 127)
        .ok_or_else(|| MidiError::OutOfRange {
            pitch: p.name().to_string(),
            octave,
        })
}

fn push_vlq(out: &mut Vec<u8>, mut value: u32) {
    let mut stack = vec![(value & 0x7f) as u8];
    value >>= 7;
    while value > 0 {
        stack.push((value & 0x7f) as u8 | 0x80);
        value >>= 7;
    }
    out.extend(stack.iter().rev());
}

/// Chords in octave 4; a pedal sounds an octave lower for the whole piece.
pub fn export_midi(score: &Score) -> Result<Vec<u8>, MidiError> {
    export_midi_in_octave(score, DEFAULT_OCTAVE)
}

pub fn export_midi_in_octave(score: &Score, octave: i32) -> Result<Vec<u8>, MidiError> {
    let pedal = score.pedal.map(|p| note_number(p, octave - 1)).transpose()?;
    let mut track = Vec::new();
    let mut pending = 0u32;
    let message = |track: &mut Vec<u8>, delta: &mut u32, bytes: [u8; 3]| {
        push_vlq(track, *delta);
        track.extend_from_slice(&bytes);
        *delta = 0;
    };
    if let Some(n) = pedal {
        message(&mut track, &mut pending, [0x90, n, VELOCITY]);
    }
    for event in &score.events {
        let notes = event
            .pitches
            .iter()
            .map(|p| note_number(p, octave))
            .collect::<Result<Vec<_>, _>>()?;
        for &n in &notes {
            message(&mut track, &mut pending, [0x90, n, VELOCITY]);
        }
        pending += event.beats * DIVISION as u32;
        for &n in &notes {
            message(&mut track, &mut pending, [0x80, n, 0]);
        }
    }
    if let Some(n) = pedal {
        message(&mut track, &mut pending, [0x80, n, 0]);
    }
    push_vlq(&mut track, pending);
    track.extend_from_slice(&[0xff, 0x2f, 0x00]);

    let mut out = Vec::with_capacity(22 + track.len());
    out.extend_from_slice(b"MThd");
    out.extend_from_slice(&6u32.to_be_bytes());
    out.extend_from_slice(&0u16.to_be_bytes());
    out.extend_from_slice(&1u16.to_be_bytes());
    out.extend_from_slice(&DIVISION.to_be_bytes());
    out.extend_from_slice(b"MTrk");
    out.extend_from_slice(&(track.len() as u32).to_be_bytes());
    out.extend_from_slice(&track);
    Ok(out)
}
