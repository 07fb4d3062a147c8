box_0 = Box(position=(45, 150, 150), size=(60, 300, 300), rotation=0)
model_0 = Model(id="M-PANEL", box=box_0)
box_1 = Box(position=(135, 150, 150), size=(60, 300, 300), rotation=0)
model_1 = Model(id="M-PANEL", box=box_1)
box_2 = Box(position=(225, 150, 150), size=(60, 300, 300), rotation=0)
model_2 = Model(id="M-PANEL", box=box_2)
box_3 = Box(position=(315, 150, 150), size=(60, 300, 300), rotation=0)
model_3 = Model(id="M-PANEL", box=box_3)
box_4 = Box(position=(405, 150, 150), size=(60, 300, 300), rotation=0)
model_4 = Model(id="M-PANEL", box=box_4)
box_5 = Box(position=(495, 150, 150), size=(60, 300, 300), rotation=0)
model_5 = Model(id="M-PANEL", box=box_5)
box_6 = Box(position=(585, 150, 150), size=(60, 300, 300), rotation=0)
model_6 = Model(id="M-PANEL", box=box_6)
box_7 = Box(position=(675, 150, 150), size=(60, 300, 300), rotation=0)
model_7 = Model(id="M-PANEL", box=box_7)
box_8 = Box(position=(765, 150, 150), size=(60, 300, 300), rotation=0)
model_8 = Model(id="M-PANEL", box=box_8)
box_9 = Box(position=(855, 150, 150), size=(60, 300, 300), rotation=0)
model_9 = Model(id="M-PANEL", box=box_9)
box_10 = Box(position=(945, 150, 150), size=(60, 300, 300), rotation=0)
model_10 = Model(id="M-PANEL", box=box_10)
box_11 = Box(position=(1035, 150, 150), size=(60, 300, 300), rotation=0)
model_11 = Model(id="M-PANEL", box=box_11)
box_12 = Box(position=(1125, 150, 150), size=(60, 300, 300), rotation=0)
model_12 = Model(id="M-PANEL", box=box_12)
box_13 = Box(position=(1215, 150, 150), size=(60, 300, 300), rotation=0)
model_13 = Model(id="M-PANEL", box=box_13)
box_14 = Box(position=(1305, 150, 150), size=(60, 300, 300), rotation=0)
model_14 = Model(id="M-PANEL", box=box_14)
box_15 = Box(position=(1395, 150, 150), size=(60, 300, 300), rotation=0)
model_15 = Model(id="M-PANEL", box=box_15)
box_16 = Box(position=(1485, 150, 150), size=(60, 300, 300), rotation=0)
model_16 = Model(id="M-PANEL", box=box_16)
box_17 = Box(position=(1575, 150, 150), size=(60, 300, 300), rotation=0)
model_17 = Model(id="M-PANEL", box=box_17)
box_18 = Box(position=(1665, 150, 150), size=(60, 300, 300), rotation=0)
model_18 = Model(id="M-PANEL", box=box_18)
box_19 = Box(position=(1755, 150, 150), size=(60, 300, 300), rotation=0)
model_19 = Model(id="M-PANEL", box=box_19)
box_20 = Box(position=(1845, 150, 150), size=(60, 300, 300), rotation=0)
model_20 = Model(id="M-PANEL", box=box_20)
box_21 = Box(position=(1935, 150, 150), size=(60, 300, 300), rotation=0)
model_21 = Model(id="M-PANEL", box=box_21)
box_22 = Box(position=(2025, 150, 150), size=(60, 300, 300), rotation=0)
model_22 = Model(id="M-PANEL", box=box_22)
box_23 = Box(position=(2115, 150, 150), size=(60, 300, 300), rotation=0)
model_23 = Model(id="M-PANEL", box=box_23)
box_24 = Box(position=(2205, 150, 150), size=(60, 300, 300), rotation=0)
model_24 = Model(id="M-PANEL", box=box_24)
box_25 = Box(position=(2295, 150, 150), size=(60, 300, 300), rotation=0)
model_25 = Model(id="M-PANEL", box=box_25)
box_26 = Box(position=(2385, 150, 150), size=(60, 300, 300), rotation=0)
model_26 = Model(id="M-PANEL", box=box_26)
box_27 = Box(position=(2475, 150, 150), size=(60, 300, 300), rotation=0)
model_27 = Model(id="M-PANEL", box=box_27)
box_28 = Box(position=(2565, 150, 150), size=(60, 300, 300), rotation=0)
model_28 = Model(id="M-PANEL", box=box_28)
box_29 = Box(position=(2655, 150, 150), size=(60, 300, 300), rotation=0)
model_29 = Model(id="M-PANEL", box=box_29)
box_30 = Box(position=(2745, 150, 150), size=(60, 300, 300), rotation=0)
model_30 = Model(id="M-PANEL", box=box_30)
box_31 = Box(position=(2835, 150, 150), size=(60, 300, 300), rotation=0)
model_31 = Model(id="M-PANEL", box=box_31)
box_32 = Box(position=(2925, 150, 150), size=(60, 300, 300), rotation=0)
model_32 = Model(id="M-PANEL", box=box_32)
box_33 = Box(position=(3015, 150, 150), size=(60, 300, 300), rotation=0)
model_33 = Model(id="M-PANEL", box=box_33)
box_34 = Box(position=(3105, 150, 150), size=(60, 300, 300), rotation=0)
model_34 = Model(id="M-PANEL", box=box_34)
box_35 = Box(position=(3195, 150, 150), size=(60, 300, 300), rotation=0)
model_35 = Model(id="M-PANEL", box=box_35)
box_36 = Box(position=(3285, 150, 150), size=(60, 300, 300), rotation=0)
model_36 = Model(id="M-PANEL", box=box_36)
box_37 = Box(position=(3375, 150, 150), size=(60, 300, 300), rotation=0)
model_37 = Model(id="M-PANEL", box=box_37)
box_38 = Box(position=(3465, 150, 150), size=(60, 300, 300), rotation=0)
model_38 = Model(id="M-PANEL", box=box_38)
box_39 = Box(position=(3555, 150, 150), size=(60, 300, 300), rotation=0)
model_39 = Model(id="M-PANEL", box=box_39)
box_40 = Box(position=(3645, 150, 150), size=(60, 300, 300), rotation=0)
model_40 = Model(id="M-PANEL", box=box_40)
box_41 = Box(position=(3735, 150, 150), size=(60, 300, 300), rotation=0)
model_41 = Model(id="M-PANEL", box=box_41)
box_42 = Box(position=(3825, 150, 150), size=(60, 300, 300), rotation=0)
model_42 = Model(id="M-PANEL", box=box_42)
box_43 = Box(position=(3915, 150, 150), size=(60, 300, 300), rotation=0)
model_43 = Model(id="M-PANEL", box=box_43)
box_44 = Box(position=(4005, 150, 150), size=(60, 300, 300), rotation=0)
model_44 = Model(id="M-PANEL", box=box_44)
box_45 = Box(position=(4095, 150, 150), size=(60, 300, 300), rotation=0)
model_45 = Model(id="M-PANEL", box=box_45)
box_46 = Box(position=(4185, 150, 150), size=(60, 300, 300), rotation=0)
model_46 = Model(id="M-PANEL", box=box_46)
box_47 = Box(position=(4275, 150, 150), size=(60, 300, 300), rotation=0)
model_47 = Model(id="M-PANEL", box=box_47)
box_48 = Box(position=(4365, 150, 150), size=(60, 300, 300), rotation=0)
model_48 = Model(id="M-PANEL", box=box_48)
