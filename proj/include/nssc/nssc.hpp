#pragma once
#include <nssc/core.hpp>
#include <nssc/denoise.hpp>
#include <nssc/depth_map.hpp>
#include <nssc/inference.hpp>
#include <nssc/io.hpp>
#include <nssc/learning.hpp>
#include <nssc/max_flow.hpp>
#include <nssc/parallel.hpp>
#include <nssc/stereo.hpp>
#include <nssc/synth.hpp>
