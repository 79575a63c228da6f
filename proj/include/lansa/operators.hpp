#pragma once

#include <array>

#include "lansa/field.hpp"

namespace lansa {

/// Physical wavevector of the mode stored at flat index idx.
std::array<double, 3> wavevector(const GridSpec& g, std::size_t idx);
/// |k|^2 of the mode stored at flat index idx.
double wavenumber_squared(const GridSpec& g, std::size_t idx);
/// True if any axis index sits on the Nyquist plane.
bool on_nyquist(const GridSpec& g, std::size_t idx);

/// Modewise (I - k k^T / |k|^2); zeroes k = 0 and the Nyquist planes.
SpectralField leray_project(const SpectralField& f);

/// A = -P Laplacian, i.e. |k|^2 on solenoidal fields.  Throws
/// ContractViolation when u is not solenoidal.
SpectralField apply_stokes(const SpectralField& u);
/// Delta_alpha = I - alpha Laplacian, (1 + alpha |k|^2).
SpectralField apply_helmholtz(const SpectralField& u, double alpha);
SpectralField invert_helmholtz(const SpectralField& u, double alpha);
/// Plain Laplacian, -|k|^2.
SpectralField apply_laplacian(const SpectralField& u);

/// Integral over the box of u.v.
double l2_inner(const SpectralField& u, const SpectralField& v);
double l2_inner(const PhysicalField& u, const PhysicalField& v);
/// (grad u, grad v)
double v_inner(const SpectralField& u, const SpectralField& v);
double l2_norm(const SpectralField& u);
double l2_norm(const PhysicalField& u);
/// ||grad u||
double v_norm(const SpectralField& u);
/// ||A u||
double da_norm(const SpectralField& u);
/// Dual norm of D(A): sum over k != 0 of |u_k|^2 / |k|^4.
double da_dual_norm(const SpectralField& u);

/// Largest modewise |k.u_k| / |k| relative to the largest |u_k|, together
/// with the mean mode magnitude folded in.  Zero for solenoidal zero-mean
/// fields.
double divergence_defect(const SpectralField& u);
bool is_solenoidal(const SpectralField& u, double tol = 1e-12);
void require_solenoidal(const SpectralField& u, const char* where);

/// Largest |c(-k) - conj(c(k))| relative to the largest coefficient.
double hermitian_defect(const SpectralField& u);
/// c(k) <- (c(k) + conj(c(-k))) / 2
void make_hermitian(SpectralField& u);

}  // namespace lansa
