#ifndef QMETRO_QMETRO_HPP
#define QMETRO_QMETRO_HPP

#include "qmetro/algebra.hpp"
#include "qmetro/channel.hpp"
#include "qmetro/io.hpp"
#include "qmetro/metrology.hpp"
#include "qmetro/probe_optimizer.hpp"
#include "qmetro/probes.hpp"
#include "qmetro/representation.hpp"
#include "qmetro/scan.hpp"
#include "qmetro/types.hpp"

#endif  // QMETRO_QMETRO_HPP
