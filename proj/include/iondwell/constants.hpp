#pragma once

// Hartree atomic units are used throughout the library:
// hbar = m_e = e = a0 = 1, energies in hartree, lengths in bohr.

namespace iondwell {
namespace constants {

/// 1 a.u. of time expressed in attoseconds (CODATA-derived).
inline constexpr double attoseconds_per_au_time = 24.18884326505;

} // namespace constants
} // namespace iondwell
