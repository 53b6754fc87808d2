#ifndef QIDLAB_QIDLAB_HPP
#define QIDLAB_QIDLAB_HPP

// Everything except I/O (qidlab/io.hpp, which needs nlohmann::json).

#include "qidlab/charfn.hpp"
#include "qidlab/config.hpp"
#include "qidlab/dist.hpp"
#include "qidlab/error.hpp"
#include "qidlab/impossibility.hpp"
#include "qidlab/pipelines.hpp"
#include "qidlab/spectral.hpp"
#include "qidlab/zerofree.hpp"

#endif  // QIDLAB_QIDLAB_HPP
