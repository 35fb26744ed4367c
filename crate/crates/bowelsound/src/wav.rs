//! Minimal RIFF/WAVE reader and writer for mono recordings.
//!
//! Reads mono PCM (8/16/24-bit integer) and 32-bit IEEE float files,
//! normalizing samples to `[-1, 1]`. Writes 16-bit PCM. Unknown chunks
//! are skipped.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::signal::SignalError;

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

#[derive(Debug, Clone, Copy)]
struct FmtChunk {
    audio_format: u16,
    channels: u16,
    sample_rate: u32,
    bits_per_sample: u16,
}

/// Decoded mono waveform with samples in `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct WavData {
    pub sample_rate: u32,
    pub samples: Vec<f64>,
}

fn corrupt(msg: &str) -> SignalError {
    SignalError::CorruptHeader(msg.to_string())
}

fn read_u16(bytes: &[u8], at: usize) -> Result<u16, SignalError> {
    bytes
        .get(at..at + 2)
        .map(|b| u16::from_le_bytes([b[0], b[1]]))
        .ok_or_else(|| corrupt("truncated field"))
}

fn read_u32(bytes: &[u8], at: usize) -> Result<u32, SignalError> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(|| corrupt("truncated field"))
}

/// Reads a mono WAV file and normalizes its samples to `[-1, 1]`.
pub fn read_wav(path: &Path) -> Result<WavData, SignalError> {
    let bytes = fs::read(path)?;
    parse_wav(&bytes)
}

pub(crate) fn parse_wav(bytes: &[u8]) -> Result<WavData, SignalError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(corrupt("missing RIFF/WAVE signature"));
    }

    let mut fmt: Option<FmtChunk> = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12usize;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = read_u32(bytes, pos + 4)? as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&end| end <= bytes.len())
            .ok_or_else(|| corrupt("chunk size exceeds file length"))?;
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(corrupt("fmt chunk too short"));
                }
                fmt = Some(FmtChunk {
                    audio_format: read_u16(bytes, body_start)?,
                    channels: read_u16(bytes, body_start + 2)?,
                    sample_rate: read_u32(bytes, body_start + 4)?,
                    bits_per_sample: read_u16(bytes, body_start + 14)?,
                });
            }
            b"data" => data = Some(&bytes[body_start..body_end]),
            _ => {}
        }
        // Chunk bodies are word-aligned; odd sizes carry a pad byte.
        pos = body_end + (size & 1);
    }

    let fmt = fmt.ok_or_else(|| corrupt("missing fmt chunk"))?;
    let data = data.ok_or_else(|| corrupt("missing data chunk"))?;

    if fmt.channels != 1 {
        return Err(SignalError::UnsupportedFormat(format!(
            "{} channels (only mono is supported)",
            fmt.channels
        )));
    }
    if fmt.sample_rate == 0 {
        return Err(corrupt("zero sample rate"));
    }

    let samples = match (fmt.audio_format, fmt.bits_per_sample) {
        (FORMAT_PCM, 8) => data.iter().map(|&b| (f64::from(b) - 128.0) / 128.0).collect(),
        (FORMAT_PCM, 16) => data
            .chunks_exact(2)
            .map(|c| f64::from(i16::from_le_bytes([c[0], c[1]])) / 32768.0)
            .collect(),
        (FORMAT_PCM, 24) => data
            .chunks_exact(3)
            .map(|c| {
                let v = i32::from_le_bytes([0, c[0], c[1], c[2]]) >> 8;
                f64::from(v) / 8_388_608.0
            })
            .collect(),
        (FORMAT_IEEE_FLOAT, 32) => data
            .chunks_exact(4)
            .map(|c| f64::from(f32::from_le_bytes([c[0], c[1], c[2], c[3]])))
            .collect(),
        (FORMAT_EXTENSIBLE, _) => {
            return Err(SignalError::UnsupportedFormat(
                "extensible WAV format".to_string(),
            ))
        }
        (format, bits) => {
            return Err(SignalError::UnsupportedFormat(format!(
                "audio format {format} with {bits} bits per sample"
            )))
        }
    };

    Ok(WavData {
        sample_rate: fmt.sample_rate,
        samples,
    })
}

/// Writes a mono 16-bit PCM WAV file. Samples are clamped to `[-1, 1]`.
pub fn write_wav(path: &Path, sample_rate: u32, samples: &[f64]) -> Result<(), SignalError> {
    let mut out = Vec::with_capacity(44 + samples.len() * 2);
    let data_len = (samples.len() * 2) as u32;
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &s in samples {
        let v = (s.clamp(-1.0, 1.0) * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        out.extend_from_slice(&v.to_le_bytes());
    }
    let mut file = fs::File::create(path)?;
    file.write_all(&out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pcm16_file(sample_rate: u32, samples: &[i16]) -> Vec<u8> {
        let mut out = Vec::new();
        let data_len = (samples.len() * 2) as u32;
        out.extend_from_slice(b"RIFF");
        out.extend_from_slice(&(36 + data_len).to_le_bytes());
        out.extend_from_slice(b"WAVE");
        out.extend_from_slice(b"fmt ");
        out.extend_from_slice(&16u32.to_le_bytes());
        out.extend_from_slice(&1u16.to_le_bytes());
        out.extend_from_slice(&1u16.to_le_bytes());
        out.extend_from_slice(&sample_rate.to_le_bytes());
        out.extend_from_slice(&(sample_rate * 2).to_le_bytes());
        out.extend_from_slice(&2u16.to_le_bytes());
        out.extend_from_slice(&16u16.to_le_bytes());
        out.extend_from_slice(b"data");
        out.extend_from_slice(&data_len.to_le_bytes());
        for &s in samples {
            out.extend_from_slice(&s.to_le_bytes());
        }
        out
    }

    #[test]
    fn zero_signal_decodes_to_zeros() {
        let wav = parse_wav(&pcm16_file(4000, &[0; 64])).unwrap();
        assert_eq!(wav.sample_rate, 4000);
        assert!(wav.samples.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn pcm16_endpoint_normalizes_to_minus_one() {
        let wav = parse_wav(&pcm16_file(4000, &[i16::MIN, i16::MAX])).unwrap();
        assert_eq!(wav.samples[0], -1.0);
        assert!((wav.samples[1] - 32767.0 / 32768.0).abs() < 1e-12);
    }

    #[test]
    fn one_second_at_4khz_has_4000_samples() {
        let wav = parse_wav(&pcm16_file(4000, &vec![1i16; 4000])).unwrap();
        assert_eq!(wav.samples.len(), 4000);
    }

    #[test]
    fn stereo_is_rejected() {
        let mut bytes = pcm16_file(4000, &[0; 8]);
        bytes[22] = 2; // channel count
        assert!(matches!(
            parse_wav(&bytes),
            Err(SignalError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(matches!(
            parse_wav(b"not a wav file at all........"),
            Err(SignalError::CorruptHeader(_))
        ));
    }

    #[test]
    fn pcm24_scaling() {
        let mut out = Vec::new();
        out.extend_from_slice(b"RIFF");
        out.extend_from_slice(&(36u32 + 6).to_le_bytes());
        out.extend_from_slice(b"WAVE");
        out.extend_from_slice(b"fmt ");
        out.extend_from_slice(&16u32.to_le_bytes());
        out.extend_from_slice(&1u16.to_le_bytes());
        out.extend_from_slice(&1u16.to_le_bytes());
        out.extend_from_slice(&4000u32.to_le_bytes());
        out.extend_from_slice(&12000u32.to_le_bytes());
        out.extend_from_slice(&3u16.to_le_bytes());
        out.extend_from_slice(&24u16.to_le_bytes());
        out.extend_from_slice(b"data");
        out.extend_from_slice(&6u32.to_le_bytes());
        out.extend_from_slice(&[0x00, 0x00, 0x80]); // -8388608
        out.extend_from_slice(&[0xFF, 0xFF, 0x7F]); // +8388607
        let wav = parse_wav(&out).unwrap();
        assert_eq!(wav.samples[0], -1.0);
        assert!((wav.samples[1] - 8_388_607.0 / 8_388_608.0).abs() < 1e-12);
    }

    #[test]
    fn write_read_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.wav");
        let samples: Vec<f64> = (0..256).map(|i| (i as f64 / 64.0).sin() * 0.8).collect();
        write_wav(&path, 4000, &samples).unwrap();
        let back = read_wav(&path).unwrap();
        assert_eq!(back.sample_rate, 4000);
        assert_eq!(back.samples.len(), samples.len());
        for (a, b) in samples.iter().zip(&back.samples) {
            assert!((a - b).abs() < 1.0 / 32000.0);
        }
    }
}
