#pragma once

#include "weylspec/extensions.hpp"
#include "weylspec/herglotz.hpp"
#include "weylspec/io.hpp"
#include "weylspec/measure.hpp"
#include "weylspec/oracle.hpp"
#include "weylspec/report.hpp"
#include "weylspec/sampling.hpp"
#include "weylspec/scan.hpp"
#include "weylspec/types.hpp"
#include "weylspec/verify.hpp"
