//! Verbosity hook threaded through the sagbi engine.

/// Receives diagnostic lines whose level does not exceed the configured
/// print level. Level 1 traces degrees and generator counts per round,
/// level 2 traces individual subduction steps.
pub struct Trace<'a> {
    level: u32,
    sink: Option<&'a mut dyn FnMut(&str)>,
}

impl<'a> Trace<'a> {
    pub fn silent() -> Trace<'a> {
        Trace {
            level: 0,
            sink: None,
        }
    }

    pub fn new(level: u32, sink: &'a mut dyn FnMut(&str)) -> Trace<'a> {
        Trace {
            level,
            sink: Some(sink),
        }
    }

    pub fn enabled(&self, level: u32) -> bool {
        self.level >= level && self.sink.is_some()
    }

    pub fn log(&mut self, level: u32, line: impl AsRef<str>) {
        if self.level >= level {
            if let Some(sink) = self.sink.as_mut() {
                sink(line.as_ref());
            }
        }
    }
}
