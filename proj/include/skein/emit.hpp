#pragma once

#include <string>

#include "skein/skein_space.hpp"
#include "skein/thread.hpp"

namespace skein {

/// SVG of a thread as a circular arc of circumference length+width with gaps
/// drawn as omitted segments; the width appears as a dashed chord between the
/// extremes. Byte-deterministic for a fixed input.
std::string thread_svg(const Thread& t);

/// SVG of a threading space: the anchor pair with each thread as an arc
/// bundle, gap breaks included.
std::string threading_svg(const ThreadingSpace& ts);

/// SVG of a truncation: anchors at the base line, each thread instance drawn
/// as an elliptical arc between its anchors with sampled points marked.
std::string skein_svg(const SkeinTruncation& tr);

/// CSV distance matrix over the thread's support grid: header row of
/// coordinates, entries as exact "p/q".
std::string thread_distance_csv(const Thread& t, const Rational& grid);

}  // namespace skein
