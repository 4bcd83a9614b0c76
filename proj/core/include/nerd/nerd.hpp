#pragma once

#include "nerd/classification.hpp"
#include "nerd/embedding.hpp"
#include "nerd/graph.hpp"
#include "nerd/link_prediction.hpp"
#include "nerd/oracle.hpp"
#include "nerd/reconstruction.hpp"
#include "nerd/sampling.hpp"
#include "nerd/trainer.hpp"
#include "nerd/types.hpp"
#include "nerd/walks.hpp"
